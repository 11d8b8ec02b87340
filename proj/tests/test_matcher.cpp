#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cnnrec/matcher.hpp"
#include "test_util.hpp"

using namespace cnnrec;

namespace {

std::vector<ScoredCandidate> table1_scored() {
    std::vector<ScoredCandidate> scored;
    for (const auto& anchor : table1_anchors()) {
        scored.push_back({anchor.spec, anchor.chi, spec_macs(anchor.spec)});
    }
    return scored;
}

} // namespace

TEST_CASE("linear fit interpolates two pairs exactly") {
    const MatchingFunction m = fit_matching(
        {{"hard", 0.6, 6.4}, {"easy", 0.9, 5.5}}, MatchingFunction::Kind::linear);
    CHECK(m.evaluate(0.6) == doctest::Approx(6.4).epsilon(1e-12));
    CHECK(m.evaluate(0.9) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(m.slope < 0.0);
}

TEST_CASE("linear fit with positive slope is rejected with a diagnostic") {
    CHECK_THROWS_WITH_AS(fit_matching({{"a", 0.6, 5.0}, {"b", 0.9, 6.0}},
                                      MatchingFunction::Kind::linear),
                         doctest::Contains("positive slope"), std::invalid_argument);
}

TEST_CASE("isotonic fit leaves monotone-decreasing pairs unchanged") {
    const std::vector<CalibrationPair> pairs = {
        {"a", 0.5, 6.5}, {"b", 0.7, 6.1}, {"c", 0.9, 5.2}};
    const MatchingFunction m = fit_matching(pairs, MatchingFunction::Kind::isotonic_decreasing);
    REQUIRE(m.knots_chi.size() == 3);
    CHECK(m.knots_chi[0] == 6.5);
    CHECK(m.knots_chi[1] == 6.1);
    CHECK(m.knots_chi[2] == 5.2);
}

TEST_CASE("isotonic fit matches the quadratic-time PAV oracle on random sets") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> chi(5.0, 7.0);
    for (int round = 0; round < 50; ++round) {
        std::vector<CalibrationPair> pairs;
        for (int i = 0; i < 6; ++i) {
            pairs.push_back({"t" + std::to_string(i), 0.1 + 0.15 * i, chi(rng)});
        }
        const MatchingFunction m =
            fit_matching(pairs, MatchingFunction::Kind::isotonic_decreasing);
        std::vector<double> ys;
        for (const auto& p : pairs) {
            ys.push_back(p.chi_optimal);
        }
        const std::vector<double> expected = testutil::pav_decreasing_oracle(ys);
        REQUIRE(m.knots_chi.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(m.knots_chi[i] == doctest::Approx(expected[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("duplicate c_all: isotonic pools, linear proceeds") {
    const std::vector<CalibrationPair> pairs = {
        {"a", 0.5, 6.6}, {"b", 0.5, 6.0}, {"c", 0.8, 5.0}};
    const MatchingFunction iso =
        fit_matching(pairs, MatchingFunction::Kind::isotonic_decreasing);
    REQUIRE(iso.knots_c.size() == 2);
    CHECK(iso.knots_chi[0] == doctest::Approx(6.3));  // pooled mean of the duplicates
    CHECK_NOTHROW(fit_matching(pairs, MatchingFunction::Kind::linear));
}

TEST_CASE("matching fit input validation") {
    CHECK_THROWS_AS(fit_matching({{"a", 0.5, 6.0}}, MatchingFunction::Kind::linear),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(fit_matching({{"a", 0.5, 6.0}, {"b", 0.5, 5.0}},
                                      MatchingFunction::Kind::linear),
                         doctest::Contains("distinct"), std::invalid_argument);
}

TEST_CASE("evaluation clamps outside the calibrated range") {
    const MatchingFunction m = fit_matching(
        {{"hard", 0.6, 6.4}, {"easy", 0.9, 5.5}}, MatchingFunction::Kind::linear);
    CHECK(m.evaluate(0.1) == doctest::Approx(6.4).epsilon(1e-12));
    CHECK(m.evaluate(0.99) == doctest::Approx(5.5).epsilon(1e-12));
}

TEST_CASE("fitted matching is monotone non-increasing on a dense grid") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> chi(5.0, 7.0);
    for (auto kind :
         {MatchingFunction::Kind::linear, MatchingFunction::Kind::isotonic_decreasing}) {
        std::vector<CalibrationPair> pairs;
        for (int i = 0; i < 7; ++i) {
            pairs.push_back({"t", 0.2 + 0.1 * i, 7.0 - 0.2 * i + 0.05 * chi(rng)});
        }
        MatchingFunction m;
        try {
            m = fit_matching(pairs, kind);
        } catch (const std::invalid_argument&) {
            continue;  // a noisy draw can make the linear slope positive
        }
        double previous = std::numeric_limits<double>::infinity();
        for (double c = 0.0; c <= 1.0; c += 0.001) {
            const double value = m.evaluate(c);
            CHECK(value <= previous + 1e-12);
            previous = value;
        }
    }
}

TEST_CASE("select_candidate: exact-target candidate is chosen (boundary inclusive)") {
    const auto scored = table1_scored();
    const Recommendation rec = select_candidate(6.04, scored);
    CHECK(rec.chosen_chi == 6.04);
    CHECK_FALSE(rec.undershoot);
}

TEST_CASE("targets in (6.12, 6.34] select Model-5") {
    const auto scored = table1_scored();
    for (double target : {6.1201, 6.2, 6.3, 6.34}) {
        const Recommendation rec = select_candidate(target, scored);
        CHECK(rec.chosen_chi == 6.34);
        CHECK(rec.chosen.n_conv == 8);
        CHECK_FALSE(rec.undershoot);
    }
}

TEST_CASE("targets above every candidate fall back to the maximum with a flag") {
    const Recommendation rec = select_candidate(6.6, table1_scored());
    CHECK(rec.undershoot);
    CHECK(rec.chosen_chi == 6.53);
    CHECK(rec.chosen.n_conv == 13);
}

TEST_CASE("chi ties break by fewer MACs, then spec order") {
    std::vector<ScoredCandidate> scored;
    scored.push_back({make_spec(64, 3, {1, 1, 1}), 6.0, spec_macs(make_spec(64, 3, {1, 1, 1}))});
    scored.push_back({make_spec(16, 3, {1, 1, 1}), 6.0, spec_macs(make_spec(16, 3, {1, 1, 1}))});
    const Recommendation rec = select_candidate(5.9, scored);
    CHECK(rec.chosen.base_maps == 16);
}

TEST_CASE("select_candidate rejects an empty list") {
    CHECK_THROWS_WITH_AS(select_candidate(6.0, {}), doctest::Contains("empty"),
                         std::invalid_argument);
}

TEST_CASE("recommendation pipeline: margin and complexity monotonicity") {
    const AbilityParams params = calibrate(table1_anchors());
    const MatchingFunction m = fit_matching(
        {{"hard", 0.55, 6.5}, {"mid", 0.7, 6.1}, {"easy", 0.9, 5.4}},
        MatchingFunction::Kind::linear);
    std::vector<CnnSpec> candidates;
    for (const auto& anchor : table1_anchors()) {
        candidates.push_back(anchor.spec);
    }

    double previous_margin_chi = -1.0;
    for (double margin : {0.0, 0.05, 0.1, 0.2}) {
        const Recommendation rec = recommend(0.7, candidates, params, m, margin);
        CHECK(rec.chosen_chi >= previous_margin_chi);
        previous_margin_chi = rec.chosen_chi;
    }

    double previous_chi = std::numeric_limits<double>::infinity();
    for (double c_all : {0.55, 0.65, 0.75, 0.85}) {
        const Recommendation rec = recommend(c_all, candidates, params, m, 0.0);
        CHECK(rec.chosen_chi <= previous_chi);
        previous_chi = rec.chosen_chi;
    }

    CHECK_THROWS_AS(recommend(0.7, {}, params, m, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(recommend(0.7, candidates, params, m, -0.1), std::invalid_argument);
}

TEST_CASE("performance curve: unit-log spacing example") {
    const PerformanceCurve curve =
        fit_performance_curve({1.0, 0.9}, {std::exp(1.0), 0.95});
    CHECK(curve.b == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(curve.a == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("performance curve: equal rates give a flat line") {
    const PerformanceCurve curve = fit_performance_curve({1.0, 0.8}, {4.0, 0.8});
    CHECK(curve.b == 0.0);
    CHECK(predict_rate(curve, 2.0) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("random anchors are reproduced within 1e-9") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> time_dist(0.01, 10.0);
    std::uniform_real_distribution<double> rate_dist(0.0, 1.0);
    for (int round = 0; round < 100; ++round) {
        CurveAnchor a{time_dist(rng), rate_dist(rng)};
        CurveAnchor b{time_dist(rng), rate_dist(rng)};
        if (a.forward_time == b.forward_time) {
            continue;
        }
        const PerformanceCurve curve = fit_performance_curve(a, b);
        CHECK(std::abs(curve.a + curve.b * std::log(a.forward_time) - a.rate) < 1e-9);
        CHECK(std::abs(curve.a + curve.b * std::log(b.forward_time) - b.rate) < 1e-9);
    }
}

TEST_CASE("interior predictions stay between the anchor rates when b > 0") {
    const PerformanceCurve curve = fit_performance_curve({0.2, 0.6}, {3.0, 0.92});
    REQUIRE(curve.b > 0.0);
    double previous = predict_rate(curve, 0.2);
    for (double t = 0.25; t < 3.0; t += 0.1) {
        const double rate = predict_rate(curve, t);
        CHECK(rate >= 0.6 - 1e-12);
        CHECK(rate <= 0.92 + 1e-12);
        CHECK(rate >= previous - 1e-12);  // monotone nondecreasing
        previous = rate;
    }
}

TEST_CASE("curve input validation") {
    CHECK_THROWS_WITH_AS(fit_performance_curve({1.0, 0.5}, {1.0, 0.7}),
                         doctest::Contains("distinct"), std::invalid_argument);
    CHECK_THROWS_AS(fit_performance_curve({-1.0, 0.5}, {2.0, 0.7}), std::invalid_argument);
    CHECK_THROWS_AS(fit_performance_curve({1.0, 1.5}, {2.0, 0.7}), std::invalid_argument);
    const PerformanceCurve curve = fit_performance_curve({1.0, 0.5}, {2.0, 0.7});
    CHECK_THROWS_AS(predict_rate(curve, 0.0), std::invalid_argument);
}

TEST_CASE("forward-time estimates scale with MACs and throughput") {
    const CnnSpec model1 = make_spec(16, 3, {1, 1, 1});
    const CnnSpec model5 = make_spec(64, 4, {2, 2, 2, 2});
    const double macs1 = static_cast<double>(spec_macs(model1));
    CHECK(estimate_forward_time(model1, macs1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(estimate_forward_time(model1, 2.0 * macs1) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(estimate_forward_time(model5, 1e9) > estimate_forward_time(model1, 1e9));
    CHECK_THROWS_AS(estimate_forward_time(model1, 0.0), std::invalid_argument);
}

TEST_CASE("curve CSV has grid rows plus flagged anchors, order-insensitive") {
    const PerformanceCurve curve = fit_performance_curve({0.5, 0.7}, {4.0, 0.9});
    const std::string csv = curve_to_csv(curve, 50);
    std::size_t lines = 0;
    for (char c : csv) {
        if (c == '\n') {
            ++lines;
        }
    }
    CHECK(lines == 1 + 50 + 2);  // header + grid + anchors

    const PerformanceCurve reversed = fit_performance_curve({4.0, 0.9}, {0.5, 0.7});
    CHECK(curve_to_csv(reversed, 50) == csv);
}

TEST_CASE("matching JSON round trip preserves evaluation") {
    const MatchingFunction m = fit_matching(
        {{"a", 0.5, 6.5}, {"b", 0.7, 6.4}, {"c", 0.8, 5.6}, {"d", 0.9, 5.2}},
        MatchingFunction::Kind::isotonic_decreasing);
    const MatchingFunction back = import_matching(export_matching(m));
    for (double c = 0.3; c <= 1.0; c += 0.01) {
        CHECK(back.evaluate(c) == doctest::Approx(m.evaluate(c)).epsilon(1e-12));
    }
}

TEST_CASE("calibration pairs JSONL parse and format") {
    const std::string text =
        R"({"task": "mnist", "c_all": 0.82, "chi_optimal": 5.6})" "\n"
        "\n"
        R"({"task": "svhn", "c_all": 0.64, "chi_optimal": 6.3})" "\n";
    const auto pairs = parse_calibration_pairs(text);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].task == "mnist");
    CHECK(pairs[1].c_all == 0.64);

    const auto reparsed = parse_calibration_pairs(format_calibration_pairs(pairs));
    REQUIRE(reparsed.size() == 2);
    CHECK(reparsed[1].chi_optimal == 6.3);

    CHECK_THROWS_WITH_AS(parse_calibration_pairs("{\"task\": \"x\"}\n"),
                         doctest::Contains("line 1"), std::invalid_argument);
}
