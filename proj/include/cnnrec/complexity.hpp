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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cnnrec/descriptor.hpp"
#include "cnnrec/image.hpp"

namespace cnnrec {

/// Nearest-class-mean classifier in descriptor space. The centroid of a
/// class is the arithmetic mean of its sample vectors; it is not learned.
struct CentroidModel {
    std::vector<std::array<double, kDescriptorSize>> centroids;

    int class_count() const { return static_cast<int>(centroids.size()); }
};

/// Fits one centroid per class as the compensated arithmetic mean of that
/// class's feature vectors, accumulated in a fixed left-to-right order.
/// Throws std::invalid_argument on an empty class.
CentroidModel fit_centroids(const std::vector<std::vector<FeatureVector>>& per_class);

/// Similarity D(s, c) = exp(-||s - c||). Always in (0, 1]; equals 1 iff the
/// vectors coincide.
double similarity(std::span<const double, kDescriptorSize> sample,
                  std::span<const double, kDescriptorSize> centroid);

struct SampleScore {
    double complexity = 0.0;  // in (0, 1)
    int best_rival = -1;      // argmax rival similarity, lowest id on ties
};

/// Per-sample complexity: C = D(s, c_own) / (D(s, c_own) + max rival D).
/// C > 0.5 exactly when the nearest centroid is the sample's own class.
/// Requires at least 2 classes in the model.
SampleScore sample_complexity(const FeatureVector& sample,
                              int own_class,
                              const CentroidModel& model);

struct PerSampleComplexity {
    int sample_id = 0;
    int class_id = 0;
    double complexity = 0.0;
    int best_rival = -1;
    bool centroid_correct = false;  // true iff complexity > 0.5
};

struct ComplexityReport {
    std::vector<PerSampleComplexity> per_sample;
    double c_all = 0.0;                   // mean of per-sample scores
    std::vector<double> per_class_mean_c; // length class_count
    std::string dataset_name;
    std::size_t sample_count = 0;
    int class_count = 0;
    std::string descriptor_variant;
};

/// Full pipeline: descriptor extraction, centroid fit on the same samples
/// (the score is defined on training data for a fixed classifier), per-sample
/// scoring and the dataset average. Deterministic for a fixed dataset.
ComplexityReport dataset_complexity(const LabeledDataset& dataset);

/// Scores pre-extracted features against a fixed, already-fitted model.
/// Exposed so callers can score different sample sets under one model.
ComplexityReport score_with_model(std::span<const FeatureVector> features,
                                  std::span<const int> labels,
                                  const CentroidModel& model,
                                  const std::string& dataset_name);

struct SimulationRow {
    int class_count = 0;
    double error_rate = 0.0;
    double ratio_to_two_class = 0.0;  // e_n / e_2
};

struct SimulationReport {
    std::vector<SimulationRow> rows;  // n = 2 .. max_classes
    double center_separation = 0.0;
    double sigma = 0.0;
    std::int64_t trials_per_class = 0;
    std::uint64_t seed = 0;
};

/// Monte-Carlo check of the 2-class-conversion hypothesis: for each n in
/// [2, max_classes], places n mutually equidistant centers (regular simplex,
/// edge = center_separation), draws `trials_per_class` isotropic Gaussian
/// samples per class, classifies by nearest center and reports the empirical
/// error rate e_n and the ratio e_n / e_2. Requires n >= 2 and
/// trials_per_class >= 10000.
SimulationReport simulate_multiclass_error(int max_classes,
                                           double center_separation,
                                           double sigma,
                                           std::int64_t trials_per_class,
                                           std::uint64_t seed);

} // namespace cnnrec
