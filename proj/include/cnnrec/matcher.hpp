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

#include "cnnrec/ability.hpp"
#include "cnnrec/archgen.hpp"

namespace cnnrec {

struct CalibrationPair {
    std::string task;
    double c_all = 0.0;
    double chi_optimal = 0.0;
};

/// Fitted map from dataset complexity score to the ability score that just
/// suffices for the task. Monotone non-increasing: higher complexity score
/// means an easier task, so the required ability falls. Evaluation outside
/// the calibrated range clamps to the nearest fitted value.
struct MatchingFunction {
    enum class Kind { linear, isotonic_decreasing };
    Kind kind = Kind::linear;

    double intercept = 0.0;  // linear kind
    double slope = 0.0;      // linear kind, <= 0

    std::vector<double> knots_c;    // distinct calibration c_all, ascending
    std::vector<double> knots_chi;  // fitted values at the knots, non-increasing

    std::vector<CalibrationPair> pairs;  // calibration provenance

    /// m(c_all), clamped outside [knots_c.front(), knots_c.back()].
    double evaluate(double c_all) const;
};

std::string to_string(MatchingFunction::Kind kind);
MatchingFunction::Kind matching_kind_from_string(const std::string& text);

/// Fits the matching function. Linear: least squares, rejected with a
/// diagnostic when the fitted slope is positive. Isotonic-decreasing:
/// pool-adjacent-violators on the negated ordering (duplicate c_all values
/// are pooled first). Requires >= 2 pairs with distinct c_all.
MatchingFunction fit_matching(std::vector<CalibrationPair> pairs,
                              MatchingFunction::Kind kind);

struct ScoredCandidate {
    CnnSpec spec;
    double chi = 0.0;
    std::int64_t macs = 0;
};

struct Recommendation {
    CnnSpec chosen;
    double target_chi = 0.0;
    double chosen_chi = 0.0;
    bool undershoot = false;  // no candidate reached the target
    std::vector<ScoredCandidate> candidates;  // full scored table
};

/// Core selection policy: the candidate with the smallest chi >= target;
/// ties broken by fewer MACs, then by spec order. When no candidate reaches
/// the target the maximum-chi candidate is returned with the undershoot
/// flag set. Throws std::invalid_argument on an empty candidate list.
Recommendation select_candidate(double target_chi,
                                std::vector<ScoredCandidate> scored);

/// Recommendation pipeline: target = m(c_all) * (1 + margin), candidates
/// scored with ability_score, then select_candidate.
Recommendation recommend(double c_all,
                         const std::vector<CnnSpec>& candidates,
                         const AbilityParams& params,
                         const MatchingFunction& matching,
                         double margin);

struct CurveAnchor {
    double forward_time = 0.0;  // seconds, > 0
    double rate = 0.0;          // validation classification rate in [0, 1]
};

/// Two-anchor accuracy-vs-speed curve r(t) = min(1, a + b ln t).
struct PerformanceCurve {
    double a = 0.0;
    double b = 0.0;
    CurveAnchor anchor_small{};
    CurveAnchor anchor_large{};
};

/// Solves the 2x2 system through both anchors; exact at the anchors.
/// Anchors may arrive in either order. Throws std::invalid_argument on
/// equal anchor times, nonpositive times or rates outside [0, 1].
PerformanceCurve fit_performance_curve(CurveAnchor first, CurveAnchor second);

/// Prediction min(1, max(0, a + b ln t)); requires t > 0.
double predict_rate(const PerformanceCurve& curve, double forward_time);

/// Forward-time estimate when measurements are unavailable:
/// total MACs / throughput. Requires throughput > 0.
double estimate_forward_time(const CnnSpec& spec, double macs_per_second);

/// Curve report CSV: header t,predicted_rate,anchor; `grid_points` rows
/// log-spaced across the anchor interval plus the two anchor rows
/// (flagged 1), all sorted by t.
std::string curve_to_csv(const PerformanceCurve& curve, int grid_points);

/// Matching-function JSON round-trip.
std::string export_matching(const MatchingFunction& matching);
MatchingFunction import_matching(const std::string& json_text);

/// Calibration pairs as JSON lines: {"task", "c_all", "chi_optimal"}.
std::vector<CalibrationPair> parse_calibration_pairs(const std::string& jsonl_text);
std::string format_calibration_pairs(const std::vector<CalibrationPair>& pairs);

} // namespace cnnrec
