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

#include "cnnrec/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cnnrec/rng.hpp"

namespace cnnrec {

void validate_gray_image(const GrayImage& image) {
    if (image.width < 3 || image.height < 3) {
        throw std::invalid_argument("image dimensions must be at least 3x3, got " +
                                    std::to_string(image.width) + "x" +
                                    std::to_string(image.height));
    }
    const std::size_t expected =
        static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
    if (image.pixels.size() != expected) {
        throw std::invalid_argument("pixel buffer has " + std::to_string(image.pixels.size()) +
                                    " entries, expected " + std::to_string(expected));
    }
    for (double v : image.pixels) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw std::invalid_argument("pixel value outside [0, 1]: " + std::to_string(v));
        }
    }
}

GrayImage make_gray_image(int width, int height, std::vector<double> pixels) {
    GrayImage image{width, height, std::move(pixels)};
    validate_gray_image(image);
    return image;
}

std::vector<std::size_t> LabeledDataset::class_histogram() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(class_count, 0)), 0);
    for (const auto& sample : samples) {
        counts.at(static_cast<std::size_t>(sample.class_id))++;
    }
    return counts;
}

void LabeledDataset::validate_structure() const {
    if (class_count < 1) {
        throw std::invalid_argument("dataset '" + name + "' has class_count " +
                                    std::to_string(class_count));
    }
    for (const auto& sample : samples) {
        if (sample.class_id < 0 || sample.class_id >= class_count) {
            throw std::invalid_argument("dataset '" + name + "' has class id " +
                                        std::to_string(sample.class_id) +
                                        " outside [0, " + std::to_string(class_count) + ")");
        }
    }
}

void LabeledDataset::validate_for_analysis() const {
    validate_structure();
    if (class_count < 2) {
        throw std::invalid_argument("dataset '" + name + "' needs at least 2 classes, has " +
                                    std::to_string(class_count));
    }
    if (samples.size() < static_cast<std::size_t>(class_count)) {
        throw std::invalid_argument("dataset '" + name + "' has " +
                                    std::to_string(samples.size()) + " samples for " +
                                    std::to_string(class_count) + " classes");
    }
    const auto counts = class_histogram();
    for (int k = 0; k < class_count; ++k) {
        if (counts[static_cast<std::size_t>(k)] == 0) {
            throw std::invalid_argument("dataset '" + name + "' has empty class " +
                                        std::to_string(k));
        }
    }
}

LabeledDataset subsample_per_class(const LabeledDataset& dataset,
                                   std::size_t max_per_class,
                                   std::uint64_t seed) {
    if (max_per_class == 0) {
        return dataset;
    }
    dataset.validate_structure();

    std::vector<std::vector<std::size_t>> indices_by_class(
        static_cast<std::size_t>(dataset.class_count));
    for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
        indices_by_class[static_cast<std::size_t>(dataset.samples[i].class_id)].push_back(i);
    }

    RandomStream rng(seed);
    std::vector<bool> keep(dataset.samples.size(), true);
    for (auto& indices : indices_by_class) {
        if (indices.size() <= max_per_class) {
            continue;
        }
        // Partial Fisher-Yates: the first max_per_class slots are a uniform
        // choice without replacement.
        for (std::size_t j = 0; j < max_per_class; ++j) {
            const std::size_t pick = j + static_cast<std::size_t>(rng.below(indices.size() - j));
            std::swap(indices[j], indices[pick]);
        }
        for (std::size_t j = max_per_class; j < indices.size(); ++j) {
            keep[indices[j]] = false;
        }
    }

    LabeledDataset out;
    out.class_count = dataset.class_count;
    out.name = dataset.name;
    for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
        if (keep[i]) {
            out.samples.push_back(dataset.samples[i]);
        }
    }
    return out;
}

} // namespace cnnrec
