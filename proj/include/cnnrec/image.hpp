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

#include <cstdint>
#include <string>
#include <vector>

namespace cnnrec {

/// Decoded grayscale image. Luminance values live in [0, 1], row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    double at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + x];
    }
    double& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + x];
    }
};

/// Builds a GrayImage and enforces its invariants: width, height >= 3,
/// pixel count == width * height, every value finite and in [0, 1].
/// Throws std::invalid_argument on violation.
GrayImage make_gray_image(int width, int height, std::vector<double> pixels);

/// Validates an existing image against the same invariants.
void validate_gray_image(const GrayImage& image);

struct LabeledSample {
    GrayImage image;
    int class_id = 0;
};

/// Decoded classification task: images with dense 0-based integer labels.
/// Immutable after construction; safe to share read-only across threads.
struct LabeledDataset {
    std::vector<LabeledSample> samples;
    int class_count = 0;
    std::string name;

    std::size_t size() const { return samples.size(); }

    /// Per-class sample counts (length class_count).
    std::vector<std::size_t> class_histogram() const;

    /// Structural check used by loaders: labels in range, class_count >= 1.
    void validate_structure() const;

    /// Full analysis-time contract: class_count >= 2, every class referenced
    /// by at least one sample, total sample count >= class_count.
    /// Throws std::invalid_argument with the first violated condition.
    void validate_for_analysis() const;
};

/// Caps each class at `max_per_class` samples via a seeded uniform choice
/// without replacement. Relative sample order is preserved. A cap of 0 or
/// >= the class size leaves the class untouched.
LabeledDataset subsample_per_class(const LabeledDataset& dataset,
                                   std::size_t max_per_class,
                                   std::uint64_t seed);

} // namespace cnnrec
