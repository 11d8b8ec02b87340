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

#include "cnnrec/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnnrec {

const char* descriptor_variant() {
    return "surf64-global-upright-unweighted-5x5";
}

double IntegralImage::box_sum(int x0, int y0, int x1, int y1) const {
    return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
}

double IntegralImage::lookup(double x, double y) const {
    x = std::clamp(x, 0.0, static_cast<double>(width_));
    y = std::clamp(y, 0.0, static_cast<double>(height_));
    int ix = static_cast<int>(std::floor(x));
    int iy = static_cast<int>(std::floor(y));
    if (ix >= width_) {
        ix = width_ - 1;
    }
    if (iy >= height_) {
        iy = height_ - 1;
    }
    const double fx = x - ix;
    const double fy = y - iy;
    const double top = (1.0 - fx) * at(ix, iy) + fx * at(ix + 1, iy);
    const double bottom = (1.0 - fx) * at(ix, iy + 1) + fx * at(ix + 1, iy + 1);
    return (1.0 - fy) * top + fy * bottom;
}

double IntegralImage::box_integral(double x0, double y0, double x1, double y1) const {
    return lookup(x1, y1) - lookup(x0, y1) - lookup(x1, y0) + lookup(x0, y0);
}

IntegralImage integral_from_buffer(int width, int height, std::span<const double> pixels) {
    if (width < 1 || height < 1 ||
        pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw std::invalid_argument("buffer size does not match dimensions");
    }
    std::vector<double> table(static_cast<std::size_t>(width + 1) * (height + 1), 0.0);
    for (int y = 0; y < height; ++y) {
        double row_sum = 0.0;
        for (int x = 0; x < width; ++x) {
            row_sum += pixels[static_cast<std::size_t>(y) * width + x];
            table[static_cast<std::size_t>(y + 1) * (width + 1) + (x + 1)] =
                table[static_cast<std::size_t>(y) * (width + 1) + (x + 1)] + row_sum;
        }
    }
    return IntegralImage(width, height, std::move(table));
}

IntegralImage integral(const GrayImage& image) {
    validate_gray_image(image);
    return integral_from_buffer(image.width, image.height, image.pixels);
}

double FeatureVector::norm() const {
    double ss = 0.0;
    for (double v : values) {
        ss += v * v;
    }
    return std::sqrt(ss);
}

bool FeatureVector::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

int haar_wavelet_side(double cell_side) {
    const int side = 2 * static_cast<int>(std::lround(cell_side / 2.0));
    return std::max(2, side);
}

namespace {

struct HaarResponse {
    double dx;
    double dy;
};

// Haar responses at a continuous sample point. The wavelet box is centered
// on the point and shifted (not clipped) to stay inside the image, so both
// halves always cover equal area and a constant brightness offset cancels
// exactly.
HaarResponse haar_at(const IntegralImage& table, double px, double py, int wavelet_side) {
    const double side = wavelet_side;
    const double half = side / 2.0;
    const double bx = std::clamp(px - half, 0.0, table.width() - side);
    const double by = std::clamp(py - half, 0.0, table.height() - side);
    const double mx = bx + half;
    const double my = by + half;
    const double dx = table.box_integral(mx, by, bx + side, by + side) -
                      table.box_integral(bx, by, mx, by + side);
    const double dy = table.box_integral(bx, my, bx + side, by + side) -
                      table.box_integral(bx, by, bx + side, my);
    return {dx, dy};
}

} // namespace

FeatureVector extract_global_descriptor(const GrayImage& image, int source_id) {
    if (image.width < kMinDescriptorSide || image.height < kMinDescriptorSide) {
        throw std::invalid_argument("image too small for descriptor extraction: " +
                                    std::to_string(image.width) + "x" +
                                    std::to_string(image.height) + " (need >= 8x8)");
    }

    const IntegralImage table = integral(image);

    // One upright keypoint: a centered square of side min(width, height).
    const double square = std::min(image.width, image.height);
    const double origin_x = (image.width - square) / 2.0;
    const double origin_y = (image.height - square) / 2.0;
    const double cell = square / kDescriptorGrid;
    const double step = cell / kDescriptorLattice;
    const int wavelet = haar_wavelet_side(cell);

    FeatureVector feature;
    feature.source_id = source_id;
    for (int row = 0; row < kDescriptorGrid; ++row) {
        for (int col = 0; col < kDescriptorGrid; ++col) {
            double sum_dx = 0.0;
            double sum_dy = 0.0;
            double sum_abs_dx = 0.0;
            double sum_abs_dy = 0.0;
            for (int v = 0; v < kDescriptorLattice; ++v) {
                const double py = origin_y + row * cell + (v + 0.5) * step;
                for (int u = 0; u < kDescriptorLattice; ++u) {
                    const double px = origin_x + col * cell + (u + 0.5) * step;
                    const HaarResponse r = haar_at(table, px, py, wavelet);
                    sum_dx += r.dx;
                    sum_dy += r.dy;
                    sum_abs_dx += std::abs(r.dx);
                    sum_abs_dy += std::abs(r.dy);
                }
            }
            const std::size_t base = (static_cast<std::size_t>(row) * kDescriptorGrid + col) * 4;
            feature.values[base] = sum_dx;
            feature.values[base + 1] = sum_dy;
            feature.values[base + 2] = sum_abs_dx;
            feature.values[base + 3] = sum_abs_dy;
        }
    }

    double energy = 0.0;
    for (double v : feature.values) {
        energy += v * v;
    }
    if (energy < kZeroEnergyThreshold) {
        feature.values.fill(0.0);
        return feature;
    }
    const double inv_norm = 1.0 / std::sqrt(energy);
    for (double& v : feature.values) {
        v *= inv_norm;
    }
    return feature;
}

std::vector<FeatureVector> extract_dataset_descriptors(const LabeledDataset& dataset) {
    std::vector<FeatureVector> features;
    features.reserve(dataset.samples.size());
    for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
        features.push_back(
            extract_global_descriptor(dataset.samples[i].image, static_cast<int>(i)));
    }
    return features;
}

} // namespace cnnrec
