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

#include "cnnrec/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cnnrec {

namespace {

using nlohmann::json;

} // namespace

std::string to_string(MatchingFunction::Kind kind) {
    return kind == MatchingFunction::Kind::linear ? "linear" : "isotonic-decreasing";
}

MatchingFunction::Kind matching_kind_from_string(const std::string& text) {
    if (text == "linear") {
        return MatchingFunction::Kind::linear;
    }
    if (text == "isotonic-decreasing" || text == "isotonic") {
        return MatchingFunction::Kind::isotonic_decreasing;
    }
    throw std::invalid_argument("matching kind: unknown value '" + text +
                                "' (want linear | isotonic-decreasing)");
}

double MatchingFunction::evaluate(double c_all) const {
    if (knots_c.empty()) {
        throw std::logic_error("matching function not fitted");
    }
    // Outside the calibrated range the nearest fitted value applies.
    if (c_all <= knots_c.front()) {
        return knots_chi.front();
    }
    if (c_all >= knots_c.back()) {
        return knots_chi.back();
    }
    if (kind == Kind::linear) {
        return intercept + slope * c_all;
    }
    const auto upper = std::upper_bound(knots_c.begin(), knots_c.end(), c_all);
    const std::size_t hi = static_cast<std::size_t>(upper - knots_c.begin());
    const std::size_t lo = hi - 1;
    const double t = (c_all - knots_c[lo]) / (knots_c[hi] - knots_c[lo]);
    return knots_chi[lo] + t * (knots_chi[hi] - knots_chi[lo]);
}

MatchingFunction fit_matching(std::vector<CalibrationPair> pairs,
                              MatchingFunction::Kind kind) {
    if (pairs.size() < 2) {
        throw std::invalid_argument("matching fit needs >= 2 calibration pairs, got " +
                                    std::to_string(pairs.size()));
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const CalibrationPair& a, const CalibrationPair& b) {
                         return a.c_all < b.c_all;
                     });
    bool distinct = false;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].c_all != pairs.front().c_all) {
            distinct = true;
            break;
        }
    }
    if (!distinct) {
        throw std::invalid_argument("matching fit needs >= 2 distinct c_all values");
    }

    MatchingFunction m;
    m.kind = kind;
    m.pairs = pairs;

    if (kind == MatchingFunction::Kind::linear) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double n = static_cast<double>(pairs.size());
        for (const auto& p : pairs) {
            sx += p.c_all;
            sy += p.chi_optimal;
            sxx += p.c_all * p.c_all;
            sxy += p.c_all * p.chi_optimal;
        }
        const double det = n * sxx - sx * sx;
        m.slope = (n * sxy - sx * sy) / det;
        m.intercept = (sy - m.slope * sx) / n;
        if (m.slope > 0.0) {
            throw std::invalid_argument(
                "matching fit has positive slope " + std::to_string(m.slope) +
                ": required ability must not rise with the complexity score (higher score = "
                "easier task); use isotonic-decreasing or review the calibration pairs");
        }
        m.knots_c = {pairs.front().c_all, pairs.back().c_all};
        m.knots_chi = {m.intercept + m.slope * pairs.front().c_all,
                       m.intercept + m.slope * pairs.back().c_all};
        return m;
    }

    // Isotonic-decreasing: pool duplicate abscissae, then PAV on the negated
    // values (non-decreasing) with block weights.
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> ws;
    for (const auto& p : pairs) {
        if (!xs.empty() && p.c_all == xs.back()) {
            ys.back() = (ys.back() * ws.back() + p.chi_optimal) / (ws.back() + 1.0);
            ws.back() += 1.0;
        } else {
            xs.push_back(p.c_all);
            ys.push_back(p.chi_optimal);
            ws.push_back(1.0);
        }
    }

    std::vector<double> value;   // block means of -chi
    std::vector<double> weight;  // block weights
    std::vector<std::size_t> size;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        value.push_back(-ys[i]);
        weight.push_back(ws[i]);
        size.push_back(1);
        while (value.size() > 1 && value[value.size() - 2] > value.back()) {
            const double merged_w = weight[weight.size() - 2] + weight.back();
            const double merged_v = (value[value.size() - 2] * weight[weight.size() - 2] +
                                     value.back() * weight.back()) /
                                    merged_w;
            value.pop_back();
            weight.pop_back();
            const std::size_t merged_n = size.back();
            size.pop_back();
            value.back() = merged_v;
            weight.back() = merged_w;
            size.back() += merged_n;
        }
    }

    m.knots_c = xs;
    m.knots_chi.clear();
    for (std::size_t b = 0, i = 0; b < value.size(); ++b) {
        for (std::size_t k = 0; k < size[b]; ++k, ++i) {
            m.knots_chi.push_back(-value[b]);
        }
    }
    for (std::size_t i = 1; i < m.knots_chi.size(); ++i) {
        if (m.knots_chi[i] > m.knots_chi[i - 1]) {
            throw std::logic_error("isotonic fit violated monotonicity");
        }
    }
    return m;
}

Recommendation select_candidate(double target_chi, std::vector<ScoredCandidate> scored) {
    if (scored.empty()) {
        throw std::invalid_argument("empty candidate list");
    }

    const auto better = [](const ScoredCandidate& a, const ScoredCandidate& b, bool pick_min) {
        if (a.chi != b.chi) {
            return pick_min ? a.chi < b.chi : a.chi > b.chi;
        }
        if (a.macs != b.macs) {
            return a.macs < b.macs;
        }
        return spec_less(a.spec, b.spec);
    };

    const ScoredCandidate* chosen = nullptr;
    for (const auto& candidate : scored) {
        if (candidate.chi < target_chi) {
            continue;
        }
        if (chosen == nullptr || better(candidate, *chosen, true)) {
            chosen = &candidate;
        }
    }

    Recommendation rec;
    rec.target_chi = target_chi;
    if (chosen == nullptr) {
        for (const auto& candidate : scored) {
            if (chosen == nullptr || better(candidate, *chosen, false)) {
                chosen = &candidate;
            }
        }
        rec.undershoot = true;
    }
    rec.chosen = chosen->spec;
    rec.chosen_chi = chosen->chi;
    rec.candidates = std::move(scored);
    return rec;
}

Recommendation recommend(double c_all,
                         const std::vector<CnnSpec>& candidates,
                         const AbilityParams& params,
                         const MatchingFunction& matching,
                         double margin) {
    if (margin < 0.0) {
        throw std::invalid_argument("margin must be non-negative, got " +
                                    std::to_string(margin));
    }
    std::vector<ScoredCandidate> scored;
    scored.reserve(candidates.size());
    for (const auto& spec : candidates) {
        scored.push_back({spec, ability_score(spec, params), spec_macs(spec)});
    }
    const double target = matching.evaluate(c_all) * (1.0 + margin);
    return select_candidate(target, std::move(scored));
}

PerformanceCurve fit_performance_curve(CurveAnchor first, CurveAnchor second) {
    for (const auto& anchor : {first, second}) {
        if (anchor.forward_time <= 0.0) {
            throw std::invalid_argument("anchor forward time must be positive, got " +
                                        std::to_string(anchor.forward_time));
        }
        if (anchor.rate < 0.0 || anchor.rate > 1.0) {
            throw std::invalid_argument("anchor rate must lie in [0, 1], got " +
                                        std::to_string(anchor.rate));
        }
    }
    if (first.forward_time == second.forward_time) {
        throw std::invalid_argument("anchors need distinct forward times");
    }
    if (first.forward_time > second.forward_time) {
        std::swap(first, second);
    }

    PerformanceCurve curve;
    curve.anchor_small = first;
    curve.anchor_large = second;
    curve.b = (second.rate - first.rate) /
              (std::log(second.forward_time) - std::log(first.forward_time));
    curve.a = first.rate - curve.b * std::log(first.forward_time);
    return curve;
}

double predict_rate(const PerformanceCurve& curve, double forward_time) {
    if (forward_time <= 0.0) {
        throw std::invalid_argument("forward time must be positive, got " +
                                    std::to_string(forward_time));
    }
    return std::min(1.0, std::max(0.0, curve.a + curve.b * std::log(forward_time)));
}

double estimate_forward_time(const CnnSpec& spec, double macs_per_second) {
    if (macs_per_second <= 0.0) {
        throw std::invalid_argument("throughput must be positive, got " +
                                    std::to_string(macs_per_second));
    }
    return static_cast<double>(spec_macs(spec)) / macs_per_second;
}

std::string curve_to_csv(const PerformanceCurve& curve, int grid_points) {
    if (grid_points < 2) {
        throw std::invalid_argument("grid needs >= 2 points, got " +
                                    std::to_string(grid_points));
    }

    struct Row {
        double t;
        double rate;
        bool anchor;
    };
    std::vector<Row> rows;
    const double log_lo = std::log(curve.anchor_small.forward_time);
    const double log_hi = std::log(curve.anchor_large.forward_time);
    for (int i = 0; i < grid_points; ++i) {
        const double t = std::exp(log_lo + (log_hi - log_lo) * i / (grid_points - 1));
        rows.push_back({t, predict_rate(curve, t), false});
    }
    rows.push_back({curve.anchor_small.forward_time, curve.anchor_small.rate, true});
    rows.push_back({curve.anchor_large.forward_time, curve.anchor_large.rate, true});
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.t < b.t; });

    std::ostringstream out;
    out << "t,predicted_rate,anchor\n";
    char buffer[96];
    for (const auto& row : rows) {
        std::snprintf(buffer, sizeof(buffer), "%.9g,%.9g,%d\n", row.t, row.rate,
                      row.anchor ? 1 : 0);
        out << buffer;
    }
    return out.str();
}

std::string export_matching(const MatchingFunction& matching) {
    json doc;
    doc["kind"] = to_string(matching.kind);
    if (matching.kind == MatchingFunction::Kind::linear) {
        doc["intercept"] = matching.intercept;
        doc["slope"] = matching.slope;
    }
    doc["knots"] = json::array();
    for (std::size_t i = 0; i < matching.knots_c.size(); ++i) {
        doc["knots"].push_back({{"c_all", matching.knots_c[i]}, {"chi", matching.knots_chi[i]}});
    }
    doc["pairs"] = json::array();
    for (const auto& p : matching.pairs) {
        doc["pairs"].push_back(
            {{"task", p.task}, {"c_all", p.c_all}, {"chi_optimal", p.chi_optimal}});
    }
    return doc.dump(2) + "\n";
}

MatchingFunction import_matching(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("matching JSON: ") + e.what());
    }
    MatchingFunction m;
    m.kind = matching_kind_from_string(doc.at("kind").get<std::string>());
    if (m.kind == MatchingFunction::Kind::linear) {
        m.intercept = doc.at("intercept").get<double>();
        m.slope = doc.at("slope").get<double>();
        if (m.slope > 0.0) {
            throw std::invalid_argument("matching JSON: positive slope is not monotone "
                                        "non-increasing");
        }
    }
    for (const auto& knot : doc.at("knots")) {
        m.knots_c.push_back(knot.at("c_all").get<double>());
        m.knots_chi.push_back(knot.at("chi").get<double>());
    }
    if (m.knots_c.size() < 2 || m.knots_c.size() != m.knots_chi.size()) {
        throw std::invalid_argument("matching JSON: need >= 2 knots");
    }
    for (std::size_t i = 1; i < m.knots_c.size(); ++i) {
        if (m.knots_c[i] <= m.knots_c[i - 1]) {
            throw std::invalid_argument("matching JSON: knots must be strictly increasing in "
                                        "c_all");
        }
        if (m.knots_chi[i] > m.knots_chi[i - 1]) {
            throw std::invalid_argument("matching JSON: knot values must be non-increasing");
        }
    }
    if (doc.contains("pairs")) {
        for (const auto& p : doc["pairs"]) {
            m.pairs.push_back({p.value("task", std::string{}), p.at("c_all").get<double>(),
                               p.at("chi_optimal").get<double>()});
        }
    }
    return m;
}

std::vector<CalibrationPair> parse_calibration_pairs(const std::string& jsonl_text) {
    std::vector<CalibrationPair> pairs;
    std::istringstream in(jsonl_text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("calibration line " + std::to_string(line_no) + ": " +
                                        e.what());
        }
        if (!doc.contains("c_all") || !doc.contains("chi_optimal")) {
            throw std::invalid_argument("calibration line " + std::to_string(line_no) +
                                        ": need c_all and chi_optimal fields");
        }
        pairs.push_back({doc.value("task", std::string{}), doc["c_all"].get<double>(),
                         doc["chi_optimal"].get<double>()});
    }
    return pairs;
}

std::string format_calibration_pairs(const std::vector<CalibrationPair>& pairs) {
    std::ostringstream out;
    for (const auto& p : pairs) {
        json doc;
        doc["task"] = p.task;
        doc["c_all"] = p.c_all;
        doc["chi_optimal"] = p.chi_optimal;
        out << doc.dump() << '\n';
    }
    return out.str();
}

} // namespace cnnrec
