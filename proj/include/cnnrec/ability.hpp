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

#include <string>
#include <vector>

#include "cnnrec/archgen.hpp"

namespace cnnrec {

/// Coefficients of the ability score chi = f(structure) * g(depth) with
///   f(spec)  = a0 + a1 * log10(total MACs)
///   g(N)     = min(1, 2 / (1 + exp(gamma * max(0, N - n0))))
/// a0/a1 are calibrated against published (model, chi) anchors; n0/gamma are
/// configuration (no deep-depth anchors exist to fit them).
struct AbilityParams {
    double a0 = 0.0;
    double a1 = 1.0;
    double n0 = 50.0;
    double gamma = 0.05;
    enum class Provenance { fitted, defaulted } provenance = Provenance::defaulted;
    std::vector<double> fit_residuals;  // one per anchor when fitted

    /// Assumption set the coefficients were calibrated under. Changing any
    /// of these requires re-calibration.
    struct Assumptions {
        int input_channels = 3;
        DownsampleKind downsample_kind = DownsampleKind::pooling;
        bool head_included = true;
        int head_class_count = 10;
    } assumptions;
};

/// Depth correction g(N); 1 for N <= n0, decays toward 0 beyond it.
double depth_correction(int n_conv, double n0, double gamma);

/// Ability score of a spec under the given coefficients. Deterministic;
/// strictly increasing in total MACs when gamma = 0.
double ability_score(const CnnSpec& spec, const AbilityParams& params);

struct AbilityAnchor {
    std::string name;
    CnnSpec spec;
    double chi = 0.0;
};

/// The six published reference models with their ability scores
/// (3 input channels, pooling down-sampling, 10-class head).
std::vector<AbilityAnchor> table1_anchors();

/// Least-squares fit of (a0, a1) over the anchors with g fixed at the given
/// n0/gamma: exact 2-parameter normal-equation solution. Residuals
/// (fitted - target) are reported per anchor. Requires >= 2 anchors with
/// distinct MAC counts and a positive fitted slope.
AbilityParams calibrate(const std::vector<AbilityAnchor>& anchors,
                        double n0 = 50.0,
                        double gamma = 0.05);

struct AbilityCeiling {
    int depth = 0;    // arg-max N
    double chi = 0.0; // maximum ability score over the scanned depths
};

inline constexpr int kCeilingDepthScanLimit = 512;

/// Maximizes chi over N (integer scan up to kCeilingDepthScanLimit) for a
/// fixed width family: S and M held, N distributed over sections as evenly
/// as possible (remainder to the earliest sections). Throws
/// std::invalid_argument when gamma = 0, where no ceiling exists.
AbilityCeiling ability_ceiling(const AbilityParams& params,
                               int base_maps,
                               int n_down,
                               const SpecOptions& options = {});

/// Params file round-trip:
/// {a0, a1, n0, gamma, provenance, assumptions{...}, residuals[]}.
std::string export_ability_params(const AbilityParams& params);
AbilityParams import_ability_params(const std::string& json_text);

} // namespace cnnrec
