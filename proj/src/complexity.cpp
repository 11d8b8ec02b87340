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

#include "cnnrec/complexity.hpp"

#include <cmath>
#include <stdexcept>

#include "cnnrec/numeric.hpp"
#include "cnnrec/rng.hpp"

namespace cnnrec {

CentroidModel fit_centroids(const std::vector<std::vector<FeatureVector>>& per_class) {
    CentroidModel model;
    model.centroids.reserve(per_class.size());
    for (std::size_t k = 0; k < per_class.size(); ++k) {
        const auto& members = per_class[k];
        if (members.empty()) {
            throw std::invalid_argument("empty class " + std::to_string(k) +
                                        ": cannot fit a centroid");
        }
        std::array<double, kDescriptorSize> centroid{};
        for (int d = 0; d < kDescriptorSize; ++d) {
            CompensatedSum acc;
            for (const auto& member : members) {
                acc.add(member.values[static_cast<std::size_t>(d)]);
            }
            centroid[static_cast<std::size_t>(d)] =
                acc.value() / static_cast<double>(members.size());
        }
        model.centroids.push_back(centroid);
    }
    return model;
}

double similarity(std::span<const double, kDescriptorSize> sample,
                  std::span<const double, kDescriptorSize> centroid) {
    double squared = 0.0;
    for (int d = 0; d < kDescriptorSize; ++d) {
        const double diff = sample[static_cast<std::size_t>(d)] -
                            centroid[static_cast<std::size_t>(d)];
        squared += diff * diff;
    }
    return std::exp(-std::sqrt(squared));
}

SampleScore sample_complexity(const FeatureVector& sample,
                              int own_class,
                              const CentroidModel& model) {
    const int classes = model.class_count();
    if (classes < 2) {
        throw std::invalid_argument("complexity needs at least 2 classes, model has " +
                                    std::to_string(classes));
    }
    if (own_class < 0 || own_class >= classes) {
        throw std::invalid_argument("own_class " + std::to_string(own_class) +
                                    " outside [0, " + std::to_string(classes) + ")");
    }

    const double own = similarity(sample.values, model.centroids[static_cast<std::size_t>(own_class)]);
    double best = -1.0;
    int best_rival = -1;
    for (int k = 0; k < classes; ++k) {
        if (k == own_class) {
            continue;
        }
        const double d = similarity(sample.values, model.centroids[static_cast<std::size_t>(k)]);
        if (d > best) {  // strict: ties keep the lowest class id
            best = d;
            best_rival = k;
        }
    }
    return {own / (own + best), best_rival};
}

ComplexityReport score_with_model(std::span<const FeatureVector> features,
                                  std::span<const int> labels,
                                  const CentroidModel& model,
                                  const std::string& dataset_name) {
    if (features.size() != labels.size()) {
        throw std::invalid_argument("feature/label count mismatch");
    }
    const int classes = model.class_count();

    ComplexityReport report;
    report.dataset_name = dataset_name;
    report.sample_count = features.size();
    report.class_count = classes;
    report.descriptor_variant = descriptor_variant();
    report.per_sample.reserve(features.size());

    CompensatedSum total;
    std::vector<CompensatedSum> per_class(static_cast<std::size_t>(classes));
    std::vector<std::size_t> per_class_count(static_cast<std::size_t>(classes), 0);
    for (std::size_t i = 0; i < features.size(); ++i) {
        const int label = labels[i];
        const SampleScore score = sample_complexity(features[i], label, model);
        report.per_sample.push_back({static_cast<int>(i), label, score.complexity,
                                     score.best_rival, score.complexity > 0.5});
        total.add(score.complexity);
        per_class[static_cast<std::size_t>(label)].add(score.complexity);
        per_class_count[static_cast<std::size_t>(label)]++;
    }

    report.c_all = features.empty() ? 0.0 : total.value() / static_cast<double>(features.size());
    report.per_class_mean_c.resize(static_cast<std::size_t>(classes), 0.0);
    for (int k = 0; k < classes; ++k) {
        const auto count = per_class_count[static_cast<std::size_t>(k)];
        report.per_class_mean_c[static_cast<std::size_t>(k)] =
            count == 0 ? 0.0 : per_class[static_cast<std::size_t>(k)].value() /
                                   static_cast<double>(count);
    }
    return report;
}

ComplexityReport dataset_complexity(const LabeledDataset& dataset) {
    dataset.validate_for_analysis();

    const std::vector<FeatureVector> features = extract_dataset_descriptors(dataset);
    std::vector<int> labels(dataset.samples.size());
    std::vector<std::vector<FeatureVector>> per_class(
        static_cast<std::size_t>(dataset.class_count));
    for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
        labels[i] = dataset.samples[i].class_id;
        per_class[static_cast<std::size_t>(labels[i])].push_back(features[i]);
    }

    const CentroidModel model = fit_centroids(per_class);
    return score_with_model(features, labels, model, dataset.name);
}

SimulationReport simulate_multiclass_error(int max_classes,
                                           double center_separation,
                                           double sigma,
                                           std::int64_t trials_per_class,
                                           std::uint64_t seed) {
    if (max_classes < 2) {
        throw std::invalid_argument("max_classes must be >= 2, got " +
                                    std::to_string(max_classes));
    }
    if (trials_per_class < 10000) {
        throw std::invalid_argument("trials_per_class must be >= 10000, got " +
                                    std::to_string(trials_per_class));
    }
    if (center_separation < 0.0 || sigma < 0.0) {
        throw std::invalid_argument("separation and sigma must be non-negative");
    }

    SimulationReport report;
    report.center_separation = center_separation;
    report.sigma = sigma;
    report.trials_per_class = trials_per_class;
    report.seed = seed;

    RandomStream rng(seed);
    for (int n = 2; n <= max_classes; ++n) {
        // n mutually equidistant centers: scaled standard-basis vectors in
        // R^n. Pairwise distance of s/sqrt(2) * (e_i - e_j) is exactly s,
        // and noise along the all-ones direction cancels in nearest-center
        // comparisons, so this matches the (n-1)-dimensional simplex.
        const double scale = center_separation / std::sqrt(2.0);
        std::vector<double> sample(static_cast<std::size_t>(n));
        std::int64_t errors = 0;
        for (int k = 0; k < n; ++k) {
            for (std::int64_t t = 0; t < trials_per_class; ++t) {
                for (int d = 0; d < n; ++d) {
                    sample[static_cast<std::size_t>(d)] =
                        (d == k ? scale : 0.0) + sigma * rng.normal();
                }
                int nearest = 0;
                double nearest_sq = 0.0;
                for (int c = 0; c < n; ++c) {
                    double sq = 0.0;
                    for (int d = 0; d < n; ++d) {
                        const double diff =
                            sample[static_cast<std::size_t>(d)] - (d == c ? scale : 0.0);
                        sq += diff * diff;
                    }
                    if (c == 0 || sq < nearest_sq) {  // strict: ties keep the lowest id
                        nearest_sq = sq;
                        nearest = c;
                    }
                }
                if (nearest != k) {
                    ++errors;
                }
            }
        }
        const double rate = static_cast<double>(errors) /
                            (static_cast<double>(n) * static_cast<double>(trials_per_class));
        report.rows.push_back({n, rate, 0.0});
    }

    const double e2 = report.rows.front().error_rate;
    for (auto& row : report.rows) {
        row.ratio_to_two_class = e2 > 0.0 ? row.error_rate / e2 : 0.0;
    }
    return report;
}

} // namespace cnnrec
