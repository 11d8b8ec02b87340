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

#include "cnnrec/ability.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace cnnrec {

double depth_correction(int n_conv, double n0, double gamma) {
    const double excess = std::max(0.0, static_cast<double>(n_conv) - n0);
    const double g = 2.0 / (1.0 + std::exp(gamma * excess));
    return std::min(1.0, g);
}

double ability_score(const CnnSpec& spec, const AbilityParams& params) {
    const std::int64_t macs = spec_macs(spec);
    assert(macs > 0);
    const double structure = params.a0 + params.a1 * std::log10(static_cast<double>(macs));
    return structure * depth_correction(spec.n_conv, params.n0, params.gamma);
}

std::vector<AbilityAnchor> table1_anchors() {
    SpecOptions options;  // 3 channels, pooling, 10-class head
    return {
        {"Model-1", make_spec(16, 3, {1, 1, 1}, options), 5.41},
        {"Model-2", make_spec(16, 4, {1, 1, 1, 1}, options), 5.44},
        {"Model-3", make_spec(64, 4, {1, 1, 1, 1}, options), 6.04},
        {"Model-4", make_spec(64, 4, {1, 1, 2, 2}, options), 6.12},
        {"Model-5", make_spec(64, 4, {2, 2, 2, 2}, options), 6.34},
        {"Model-6", make_spec(64, 4, {3, 3, 3, 4}, options), 6.53},
    };
}

AbilityParams calibrate(const std::vector<AbilityAnchor>& anchors, double n0, double gamma) {
    if (anchors.size() < 2) {
        throw std::invalid_argument("calibration needs >= 2 anchors, got " +
                                    std::to_string(anchors.size()));
    }
    if (n0 <= 0.0 || gamma < 0.0) {
        throw std::invalid_argument("calibration needs n0 > 0 and gamma >= 0");
    }

    // chi_hat = a0 * g + a1 * (g * log10 macs): linear in (a0, a1) once g is
    // fixed, solved by the 2x2 normal equations.
    std::vector<double> u(anchors.size());  // g
    std::vector<double> v(anchors.size());  // g * log10(macs)
    std::vector<double> y(anchors.size());
    bool distinct_macs = false;
    std::int64_t first_macs = 0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        const std::int64_t macs = spec_macs(anchors[i].spec);
        if (i == 0) {
            first_macs = macs;
        } else if (macs != first_macs) {
            distinct_macs = true;
        }
        const double g = depth_correction(anchors[i].spec.n_conv, n0, gamma);
        u[i] = g;
        v[i] = g * std::log10(static_cast<double>(macs));
        y[i] = anchors[i].chi;
    }
    if (!distinct_macs) {
        throw std::invalid_argument("degenerate design: all anchors share one MAC count");
    }

    double suu = 0.0, suv = 0.0, svv = 0.0, suy = 0.0, svy = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        suu += u[i] * u[i];
        suv += u[i] * v[i];
        svv += v[i] * v[i];
        suy += u[i] * y[i];
        svy += v[i] * y[i];
    }
    const double det = suu * svv - suv * suv;
    if (det == 0.0) {
        throw std::invalid_argument("degenerate design: singular normal equations");
    }

    AbilityParams params;
    params.a0 = (svv * suy - suv * svy) / det;
    params.a1 = (suu * svy - suv * suy) / det;
    params.n0 = n0;
    params.gamma = gamma;
    params.provenance = AbilityParams::Provenance::fitted;
    if (params.a1 <= 0.0) {
        throw std::invalid_argument("calibration produced a non-positive slope a1 = " +
                                    std::to_string(params.a1) +
                                    "; anchors do not grow with structure size");
    }
    params.fit_residuals.resize(anchors.size());
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        params.fit_residuals[i] = (params.a0 * u[i] + params.a1 * v[i]) - y[i];
    }
    return params;
}

AbilityCeiling ability_ceiling(const AbilityParams& params,
                               int base_maps,
                               int n_down,
                               const SpecOptions& options) {
    if (params.gamma <= 0.0) {
        throw std::invalid_argument("no ceiling: gamma = 0 makes the ability score unbounded "
                                    "in depth");
    }

    AbilityCeiling best{0, 0.0};
    for (int n = n_down; n <= kCeilingDepthScanLimit; ++n) {
        // N spread evenly over sections, remainder to the earliest ones.
        std::vector<int> q(static_cast<std::size_t>(n_down), n / n_down);
        for (int i = 0; i < n % n_down; ++i) {
            q[static_cast<std::size_t>(i)]++;
        }
        const CnnSpec spec = make_spec(base_maps, n_down, std::move(q), options);
        const double chi = ability_score(spec, params);
        if (best.depth == 0 || chi > best.chi) {
            best = {n, chi};
        }
    }
    return best;
}

namespace {

using nlohmann::json;

} // namespace

std::string export_ability_params(const AbilityParams& params) {
    json doc;
    doc["a0"] = params.a0;
    doc["a1"] = params.a1;
    doc["n0"] = params.n0;
    doc["gamma"] = params.gamma;
    doc["provenance"] =
        params.provenance == AbilityParams::Provenance::fitted ? "fitted" : "default";
    doc["assumptions"] = {
        {"input_channels", params.assumptions.input_channels},
        {"downsample_kind", to_string(params.assumptions.downsample_kind)},
        {"head", {{"included", params.assumptions.head_included},
                  {"class_count", params.assumptions.head_class_count}}},
    };
    doc["residuals"] = params.fit_residuals;
    return doc.dump(2) + "\n";
}

AbilityParams import_ability_params(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("params JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("params JSON: expected an object");
    }
    for (const char* field : {"a0", "a1", "n0", "gamma"}) {
        if (!doc.contains(field) || !doc[field].is_number()) {
            throw std::invalid_argument(std::string(field) + ": missing or not a number");
        }
    }

    AbilityParams params;
    params.a0 = doc["a0"].get<double>();
    params.a1 = doc["a1"].get<double>();
    params.n0 = doc["n0"].get<double>();
    params.gamma = doc["gamma"].get<double>();
    if (params.a1 <= 0.0) {
        throw std::invalid_argument("a1: must be positive, got " + std::to_string(params.a1));
    }
    if (params.n0 <= 0.0 || params.gamma < 0.0) {
        throw std::invalid_argument("n0/gamma: need n0 > 0 and gamma >= 0");
    }
    if (doc.contains("provenance")) {
        const auto text = doc["provenance"].get<std::string>();
        if (text == "fitted") {
            params.provenance = AbilityParams::Provenance::fitted;
        } else if (text == "default") {
            params.provenance = AbilityParams::Provenance::defaulted;
        } else {
            throw std::invalid_argument("provenance: unknown value '" + text + "'");
        }
    }
    if (doc.contains("assumptions")) {
        const auto& a = doc["assumptions"];
        if (a.contains("input_channels")) {
            params.assumptions.input_channels = a["input_channels"].get<int>();
        }
        if (a.contains("downsample_kind")) {
            params.assumptions.downsample_kind =
                downsample_kind_from_string(a["downsample_kind"].get<std::string>());
        }
        if (a.contains("head")) {
            if (a["head"].contains("included")) {
                params.assumptions.head_included = a["head"]["included"].get<bool>();
            }
            if (a["head"].contains("class_count")) {
                params.assumptions.head_class_count = a["head"]["class_count"].get<int>();
            }
        }
    }
    if (doc.contains("residuals")) {
        params.fit_residuals = doc["residuals"].get<std::vector<double>>();
    }
    if (params.provenance == AbilityParams::Provenance::fitted &&
        params.fit_residuals.empty()) {
        throw std::invalid_argument("residuals: fitted params must carry per-anchor residuals");
    }
    return params;
}

} // namespace cnnrec
