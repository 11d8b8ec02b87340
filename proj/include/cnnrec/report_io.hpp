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

#include <span>
#include <string>

#include "cnnrec/complexity.hpp"
#include "cnnrec/descriptor.hpp"

namespace cnnrec {

/// Complexity report JSON:
/// {dataset, l, class_count, c_all, per_class_mean_c[],
///  per_sample[](id, class, c, rival, correct), descriptor_variant}.
/// c_all and per-class means carry 6 decimal places; per-sample scores are
/// serialized at full precision.
std::string complexity_report_to_json(const ComplexityReport& report);
ComplexityReport complexity_report_from_json(const std::string& json_text);

/// Descriptor dump CSV: sample_id, class_id, 64 value columns at 9
/// significant digits.
std::string descriptors_to_csv(std::span<const FeatureVector> features,
                               std::span<const int> labels);

/// Simulation report JSON (per-n error rates and e_n/e_2 ratios).
std::string simulation_report_to_json(const SimulationReport& report);

/// Rounds to 6 decimal places; report fields quote c_all at this precision.
double round6(double value);

/// Writes content through a temp file in the target directory, then renames.
void atomic_write_file(const std::string& path, const std::string& content);

/// Whole-file read; throws cnnrec::parse_error when unreadable.
std::string read_text_file(const std::string& path);

} // namespace cnnrec
