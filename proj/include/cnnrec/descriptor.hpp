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

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cnnrec/image.hpp"

namespace cnnrec {

inline constexpr int kDescriptorSize = 64;
inline constexpr int kDescriptorGrid = 4;       // 4x4 cells over the keypoint square
inline constexpr int kDescriptorLattice = 5;    // 5x5 Haar sample points per cell
inline constexpr int kMinDescriptorSide = 8;
inline constexpr double kZeroEnergyThreshold = 1e-12;

/// Identifies the descriptor variant in reports: 64-dim upright SURF layout,
/// one whole-image keypoint, uniform (non-Gaussian) response weights,
/// fixed 5x5 sampling lattice per cell.
const char* descriptor_variant();

/// Summed-area table with a zero top row and left column:
/// at(x, y) = sum of pixels in [0, x) x [0, y).
class IntegralImage {
public:
    IntegralImage() = default;
    IntegralImage(int width, int height, std::vector<double> table)
        : width_(width), height_(height), table_(std::move(table)) {}

    int width() const { return width_; }
    int height() const { return height_; }

    double at(int x, int y) const {
        return table_[static_cast<std::size_t>(y) * (width_ + 1) + x];
    }

    /// Sum of pixels in the integer box [x0, x1) x [y0, y1); 4 corner lookups.
    double box_sum(int x0, int y0, int x1, int y1) const;

    /// Integral of the pixel-constant image over the continuous rectangle
    /// [x0, x1] x [y0, y1] in pixel coordinates (pixel (i, j) occupies
    /// [i, i+1] x [j, j+1]). Exact for the piecewise-constant density since
    /// the cumulative integral is bilinear inside each pixel.
    double box_integral(double x0, double y0, double x1, double y1) const;

    /// Cumulative integral at continuous (x, y): bilinear interpolation of
    /// the four surrounding table entries. Coordinates clamp to the image.
    double lookup(double x, double y) const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> table_;
};

/// Builds the summed-area table of an image.
IntegralImage integral(const GrayImage& image);

/// Summed-area table of a raw row-major luminance buffer (no minimum size).
IntegralImage integral_from_buffer(int width, int height, std::span<const double> pixels);

/// 64-dimensional whole-image descriptor. Unit L2 norm, or exactly all-zero
/// for images without intensity variation.
struct FeatureVector {
    std::array<double, kDescriptorSize> values{};
    int source_id = -1;

    double norm() const;
    bool is_zero() const;
};

/// Extracts the whole-image descriptor: one upright keypoint square of side
/// min(width, height) centered on the image, split into a 4x4 cell grid; per
/// cell, Haar responses dx/dy are accumulated at a 5x5 lattice (wavelet side
/// = cell side rounded to even, >= 2; boxes shift inward at the image border
/// so both wavelet halves keep equal area) and contribute
/// (sum dx, sum dy, sum |dx|, sum |dy|). The 64 values are L2-normalized;
/// if total energy < 1e-12 the all-zero vector is returned unnormalized.
/// Requires width >= 8 and height >= 8, else std::invalid_argument.
FeatureVector extract_global_descriptor(const GrayImage& image, int source_id = -1);

/// Descriptors for every sample of a dataset, in sample order.
std::vector<FeatureVector> extract_dataset_descriptors(const LabeledDataset& dataset);

/// Wavelet side used for a given cell side: nearest even integer, >= 2.
int haar_wavelet_side(double cell_side);

} // namespace cnnrec
