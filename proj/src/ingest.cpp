/*
 *  Copyright 2026 cnnrec contributors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include "cnnrec/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cnnrec/errors.hpp"
#include "cnnrec/rng.hpp"

namespace cnnrec {

namespace {

constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;
constexpr std::size_t kCifarRecordSize = 3073;  // 1 label + 3 * 1024 channel bytes

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error(path, 0, "cannot open file");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t offset,
                        const std::string& path) {
    if (offset + 4 > bytes.size()) {
        throw parse_error(path, bytes.size(), "truncated header: need 4 bytes at offset " +
                                                  std::to_string(offset));
    }
    return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
           (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
           (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
           static_cast<std::uint32_t>(bytes[offset + 3]);
}

void write_be32(std::ofstream& out, std::uint32_t value) {
    const char buf[4] = {
        static_cast<char>((value >> 24) & 0xff),
        static_cast<char>((value >> 16) & 0xff),
        static_cast<char>((value >> 8) & 0xff),
        static_cast<char>(value & 0xff),
    };
    out.write(buf, 4);
}

} // namespace

double rgb_to_luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double lum = (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
    return std::clamp(lum, 0.0, 1.0);
}

LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path) {
    const auto image_bytes = read_binary_file(images_path);
    const auto label_bytes = read_binary_file(labels_path);

    const std::uint32_t image_magic = read_be32(image_bytes, 0, images_path);
    if (image_magic != kIdxImagesMagic) {
        char expected[32];
        std::snprintf(expected, sizeof(expected), "0x%08x", kIdxImagesMagic);
        char got[32];
        std::snprintf(got, sizeof(got), "0x%08x", image_magic);
        throw parse_error(images_path, 0,
                          std::string("bad image magic ") + got + ", expected " + expected);
    }
    const std::uint32_t label_magic = read_be32(label_bytes, 0, labels_path);
    if (label_magic != kIdxLabelsMagic) {
        char expected[32];
        std::snprintf(expected, sizeof(expected), "0x%08x", kIdxLabelsMagic);
        char got[32];
        std::snprintf(got, sizeof(got), "0x%08x", label_magic);
        throw parse_error(labels_path, 0,
                          std::string("bad label magic ") + got + ", expected " + expected);
    }

    const std::uint32_t image_count = read_be32(image_bytes, 4, images_path);
    const std::uint32_t rows = read_be32(image_bytes, 8, images_path);
    const std::uint32_t cols = read_be32(image_bytes, 12, images_path);
    const std::uint32_t label_count = read_be32(label_bytes, 4, labels_path);

    if (image_count != label_count) {
        throw parse_error(labels_path, 4,
                          "count mismatch: " + std::to_string(image_count) + " images vs " +
                              std::to_string(label_count) + " labels");
    }
    if (rows < 3 || cols < 3) {
        throw parse_error(images_path, 8,
                          "image dimensions " + std::to_string(cols) + "x" +
                              std::to_string(rows) + " below the 3x3 minimum");
    }

    const std::size_t pixels_per_image = static_cast<std::size_t>(rows) * cols;
    const std::size_t expected_image_size = 16 + static_cast<std::size_t>(image_count) * pixels_per_image;
    if (image_bytes.size() != expected_image_size) {
        throw parse_error(images_path, std::min(image_bytes.size(), expected_image_size),
                          "truncated payload: file has " + std::to_string(image_bytes.size()) +
                              " bytes, expected " + std::to_string(expected_image_size));
    }
    const std::size_t expected_label_size = 8 + static_cast<std::size_t>(label_count);
    if (label_bytes.size() != expected_label_size) {
        throw parse_error(labels_path, std::min(label_bytes.size(), expected_label_size),
                          "truncated payload: file has " + std::to_string(label_bytes.size()) +
                              " bytes, expected " + std::to_string(expected_label_size));
    }

    LabeledDataset dataset;
    dataset.name = "idx:" + std::filesystem::path(images_path).filename().string();
    dataset.samples.reserve(image_count);
    int max_label = 0;
    for (std::uint32_t i = 0; i < image_count; ++i) {
        std::vector<double> pixels(pixels_per_image);
        const std::size_t base = 16 + static_cast<std::size_t>(i) * pixels_per_image;
        for (std::size_t p = 0; p < pixels_per_image; ++p) {
            pixels[p] = image_bytes[base + p] / 255.0;
        }
        const int label = label_bytes[8 + i];
        max_label = std::max(max_label, label);
        dataset.samples.push_back(
            {make_gray_image(static_cast<int>(cols), static_cast<int>(rows), std::move(pixels)),
             label});
    }
    dataset.class_count = max_label + 1;
    dataset.validate_structure();
    return dataset;
}

LabeledDataset load_cifar_binary(const std::vector<std::string>& paths, int class_count) {
    if (class_count < 1) {
        throw std::invalid_argument("class_count must be positive, got " +
                                    std::to_string(class_count));
    }
    LabeledDataset dataset;
    dataset.class_count = class_count;
    dataset.name = paths.empty() ? "cifar" : "cifar:" +
        std::filesystem::path(paths.front()).filename().string() +
        (paths.size() > 1 ? "+" + std::to_string(paths.size() - 1) : "");

    for (const auto& path : paths) {
        const auto bytes = read_binary_file(path);
        if (bytes.size() % kCifarRecordSize != 0) {
            throw parse_error(path, bytes.size(),
                              "file length " + std::to_string(bytes.size()) +
                                  " is not a multiple of the " +
                                  std::to_string(kCifarRecordSize) + "-byte record size");
        }
        const std::size_t records = bytes.size() / kCifarRecordSize;
        for (std::size_t r = 0; r < records; ++r) {
            const std::size_t base = r * kCifarRecordSize;
            const int label = bytes[base];
            if (label >= class_count) {
                throw parse_error(path, base,
                                  "label byte " + std::to_string(label) + " >= class_count " +
                                      std::to_string(class_count));
            }
            std::vector<double> pixels(1024);
            for (std::size_t p = 0; p < 1024; ++p) {
                pixels[p] = rgb_to_luminance(bytes[base + 1 + p], bytes[base + 1025 + p],
                                             bytes[base + 2049 + p]);
            }
            dataset.samples.push_back({make_gray_image(32, 32, std::move(pixels)), label});
        }
    }
    dataset.validate_structure();
    return dataset;
}

namespace {

bool has_image_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".pgm" || ext == ".ppm";
}

GrayImage decode_image_file(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png") {
        return decode_png(path.string());
    }
    return decode_pnm(path.string());
}

} // namespace

LabeledDataset load_image_dir(const std::string& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) {
        throw parse_error(root, 0, "not a directory");
    }

    std::vector<fs::path> class_dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) {
            class_dirs.push_back(entry.path());
        }
    }
    std::sort(class_dirs.begin(), class_dirs.end(),
              [](const fs::path& a, const fs::path& b) {
                  return a.filename().string() < b.filename().string();
              });
    if (class_dirs.size() < 2) {
        throw std::invalid_argument("fewer than 2 classes: directory '" + root + "' has " +
                                    std::to_string(class_dirs.size()) +
                                    " class subdirectories");
    }

    LabeledDataset dataset;
    dataset.class_count = static_cast<int>(class_dirs.size());
    dataset.name = "dir:" + fs::path(root).filename().string();

    for (std::size_t class_id = 0; class_id < class_dirs.size(); ++class_id) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(class_dirs[class_id])) {
            if (entry.is_regular_file() && has_image_extension(entry.path())) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
            return a.filename().string() < b.filename().string();
        });
        if (files.empty()) {
            throw std::invalid_argument("class directory '" + class_dirs[class_id].string() +
                                        "' contains no PNG/PGM/PPM images");
        }
        for (const auto& file : files) {
            dataset.samples.push_back({decode_image_file(file), static_cast<int>(class_id)});
        }
    }
    dataset.validate_structure();
    return dataset;
}

namespace {

// Skips PNM whitespace and '#' comment lines; returns the next token.
std::string next_pnm_token(const std::vector<std::uint8_t>& bytes, std::size_t& pos,
                           const std::string& path) {
    while (pos < bytes.size()) {
        const char c = static_cast<char>(bytes[pos]);
        if (c == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') {
                ++pos;
            }
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else {
            break;
        }
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
           bytes[pos] != '#') {
        ++pos;
    }
    if (start == pos) {
        throw parse_error(path, start, "unexpected end of header");
    }
    return std::string(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                       bytes.begin() + static_cast<std::ptrdiff_t>(pos));
}

int parse_pnm_int(const std::vector<std::uint8_t>& bytes, std::size_t& pos,
                  const std::string& path, const char* what) {
    const std::size_t at = pos;
    const std::string token = next_pnm_token(bytes, pos, path);
    try {
        return std::stoi(token);
    } catch (const std::exception&) {
        throw parse_error(path, at, std::string("invalid ") + what + " '" + token + "'");
    }
}

} // namespace

GrayImage decode_pnm(const std::string& path) {
    const auto bytes = read_binary_file(path);
    std::size_t pos = 0;
    const std::string magic = next_pnm_token(bytes, pos, path);
    if (magic != "P5" && magic != "P6") {
        throw parse_error(path, 0, "unsupported PNM magic '" + magic + "' (want binary P5/P6)");
    }
    const bool color = magic == "P6";
    const int width = parse_pnm_int(bytes, pos, path, "width");
    const int height = parse_pnm_int(bytes, pos, path, "height");
    const int maxval = parse_pnm_int(bytes, pos, path, "maxval");
    if (maxval != 255) {
        throw parse_error(path, pos, "unsupported maxval " + std::to_string(maxval) +
                                         " (only 255 is accepted)");
    }
    if (pos >= bytes.size()) {
        throw parse_error(path, pos, "missing raster data");
    }
    ++pos;  // single whitespace byte between maxval and raster

    const std::size_t pixel_count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t needed = pixel_count * (color ? 3 : 1);
    if (bytes.size() - pos < needed) {
        throw parse_error(path, bytes.size(),
                          "truncated raster: " + std::to_string(bytes.size() - pos) +
                              " bytes, expected " + std::to_string(needed));
    }

    std::vector<double> pixels(pixel_count);
    if (color) {
        for (std::size_t p = 0; p < pixel_count; ++p) {
            pixels[p] = rgb_to_luminance(bytes[pos + 3 * p], bytes[pos + 3 * p + 1],
                                         bytes[pos + 3 * p + 2]);
        }
    } else {
        for (std::size_t p = 0; p < pixel_count; ++p) {
            pixels[p] = bytes[pos + p] / 255.0;
        }
    }
    return make_gray_image(width, height, std::move(pixels));
}

LabeledDataset synth_blob_task(int class_count,
                               int samples_per_class,
                               int image_side,
                               double separation,
                               double noise_sigma,
                               std::uint64_t seed) {
    if (class_count < 2) {
        throw std::invalid_argument("class_count must be >= 2, got " +
                                    std::to_string(class_count));
    }
    if (samples_per_class < 1) {
        throw std::invalid_argument("samples_per_class must be >= 1, got " +
                                    std::to_string(samples_per_class));
    }
    if (image_side < 8) {
        throw std::invalid_argument("image_side must be >= 8, got " +
                                    std::to_string(image_side));
    }
    if (separation < 0.0 || noise_sigma < 0.0) {
        throw std::invalid_argument("separation and noise_sigma must be non-negative");
    }

    const double center = (image_side - 1) / 2.0;
    const double radius = separation * image_side / 4.0;
    const double blob_sigma = image_side / 8.0;
    const std::size_t pixel_count =
        static_cast<std::size_t>(image_side) * static_cast<std::size_t>(image_side);

    std::vector<std::vector<double>> templates(static_cast<std::size_t>(class_count));
    for (int k = 0; k < class_count; ++k) {
        const double angle = 2.0 * 3.141592653589793238462643383279502884 * k / class_count;
        const double cx = center + radius * std::cos(angle);
        const double cy = center + radius * std::sin(angle);
        auto& tpl = templates[static_cast<std::size_t>(k)];
        tpl.resize(pixel_count);
        for (int y = 0; y < image_side; ++y) {
            for (int x = 0; x < image_side; ++x) {
                const double dx = x - cx;
                const double dy = y - cy;
                tpl[static_cast<std::size_t>(y) * image_side + x] =
                    std::exp(-(dx * dx + dy * dy) / (2.0 * blob_sigma * blob_sigma));
            }
        }
    }

    RandomStream rng(seed);
    LabeledDataset dataset;
    dataset.class_count = class_count;
    {
        std::ostringstream name;
        name << "synth(n=" << class_count << ",k=" << samples_per_class
             << ",side=" << image_side << ",sep=" << separation << ",noise=" << noise_sigma
             << ",seed=" << seed << ")";
        dataset.name = name.str();
    }
    dataset.samples.reserve(static_cast<std::size_t>(class_count) * samples_per_class);
    for (int k = 0; k < class_count; ++k) {
        const auto& tpl = templates[static_cast<std::size_t>(k)];
        for (int s = 0; s < samples_per_class; ++s) {
            std::vector<double> pixels(pixel_count);
            for (std::size_t p = 0; p < pixel_count; ++p) {
                pixels[p] = std::clamp(tpl[p] + noise_sigma * rng.normal(), 0.0, 1.0);
            }
            dataset.samples.push_back({make_gray_image(image_side, image_side, std::move(pixels)), k});
        }
    }
    return dataset;
}

void write_idx(const LabeledDataset& dataset,
               const std::string& images_path,
               const std::string& labels_path) {
    if (dataset.samples.empty()) {
        throw std::invalid_argument("cannot write an empty dataset");
    }
    const int width = dataset.samples.front().image.width;
    const int height = dataset.samples.front().image.height;
    for (const auto& sample : dataset.samples) {
        if (sample.image.width != width || sample.image.height != height) {
            throw std::invalid_argument("IDX requires uniform image dimensions");
        }
        if (sample.class_id > 255) {
            throw std::invalid_argument("IDX labels are single bytes; class id " +
                                        std::to_string(sample.class_id) + " does not fit");
        }
    }

    std::ofstream images(images_path, std::ios::binary | std::ios::trunc);
    if (!images) {
        throw parse_error(images_path, 0, "cannot open file for writing");
    }
    write_be32(images, kIdxImagesMagic);
    write_be32(images, static_cast<std::uint32_t>(dataset.samples.size()));
    write_be32(images, static_cast<std::uint32_t>(height));
    write_be32(images, static_cast<std::uint32_t>(width));
    for (const auto& sample : dataset.samples) {
        for (double v : sample.image.pixels) {
            const auto byte = static_cast<unsigned char>(std::lround(v * 255.0));
            images.put(static_cast<char>(byte));
        }
    }
    images.close();

    std::ofstream labels(labels_path, std::ios::binary | std::ios::trunc);
    if (!labels) {
        throw parse_error(labels_path, 0, "cannot open file for writing");
    }
    write_be32(labels, kIdxLabelsMagic);
    write_be32(labels, static_cast<std::uint32_t>(dataset.samples.size()));
    for (const auto& sample : dataset.samples) {
        labels.put(static_cast<char>(static_cast<unsigned char>(sample.class_id)));
    }
}

} // namespace cnnrec
