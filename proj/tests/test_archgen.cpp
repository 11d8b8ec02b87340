#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cnnrec/archgen.hpp"

using namespace cnnrec;

namespace {

CnnSpec random_spec(std::mt19937_64& rng) {
    SpecOptions options;
    options.downsample_kind =
        (rng() % 2 == 0) ? DownsampleKind::pooling : DownsampleKind::strided_conv;
    options.input_channels = 1 + static_cast<int>(rng() % 3);
    options.head.class_count = 2 + static_cast<int>(rng() % 20);
    const int m = 1 + static_cast<int>(rng() % 5);
    std::vector<int> q;
    for (int i = 0; i < m; ++i) {
        q.push_back(1 + static_cast<int>(rng() % 4));
    }
    const int s = 1 << (3 + rng() % 4);  // 8..64
    return make_spec(s, m, q, options);
}

} // namespace

TEST_CASE("make_spec computes N from q (published model shapes)") {
    const CnnSpec model1 = make_spec(16, 3, {1, 1, 1});
    CHECK(model1.n_conv == 3);
    const CnnSpec model5 = make_spec(64, 4, {2, 2, 2, 2});
    CHECK(model5.n_conv == 8);
}

TEST_CASE("make_spec rejects malformed q") {
    CHECK_THROWS_WITH_AS(make_spec(16, 3, {1, 1}), doctest::Contains("does not match"),
                         std::invalid_argument);
    CHECK_THROWS_AS(make_spec(16, 1, {}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_spec(16, 2, {1, 0}), doctest::Contains("q[1]"),
                         std::invalid_argument);
}

TEST_CASE("make_spec rejects more than 5 sections for the 52-pixel input") {
    CHECK_NOTHROW(make_spec(16, 5, {1, 1, 1, 1, 1}));
    CHECK_THROWS_WITH_AS(make_spec(16, 6, {1, 1, 1, 1, 1, 1}), doctest::Contains("at most 5"),
                         std::invalid_argument);
}

TEST_CASE("expand_layers: Model-1 widths and sides") {
    const CnnSpec spec = make_spec(16, 3, {1, 1, 1});
    const auto layers = expand_layers(spec, 10);
    // conv pool conv pool conv pool gap fc
    REQUIRE(layers.size() == 8);
    CHECK(layers[0].kind == LayerKind::conv);
    CHECK(layers[0].out_channels == 16);
    CHECK(layers[0].in_side == 52);
    CHECK(layers[0].out_side == 52);
    CHECK(layers[1].kind == LayerKind::pool);
    CHECK(layers[2].out_channels == 32);
    CHECK(layers[2].in_side == 26);
    CHECK(layers[4].out_channels == 64);
    CHECK(layers[4].in_side == 13);
    CHECK(layers[6].kind == LayerKind::global_pool);
    CHECK(layers[6].in_side == 7);
    CHECK(layers[7].kind == LayerKind::fully_connected);
    CHECK(layers[7].out_channels == 10);
}

TEST_CASE("expand_layers: strided-conv with one section is exactly two convs plus head") {
    SpecOptions options;
    options.downsample_kind = DownsampleKind::strided_conv;
    const CnnSpec spec = make_spec(16, 1, {1}, options);
    const auto layers = expand_layers(spec);
    REQUIRE(layers.size() == 4);
    CHECK(layers[0].kind == LayerKind::conv);
    CHECK(layers[0].stride == 1);
    CHECK(layers[1].kind == LayerKind::conv);
    CHECK(layers[1].stride == 2);
    CHECK(layers[1].out_channels == 32);  // down-sampling conv doubles channels
    CHECK(layers[1].out_side == 26);
    CHECK(layers[2].kind == LayerKind::global_pool);
    CHECK(layers[3].kind == LayerKind::fully_connected);
}

TEST_CASE("ceil-halving side sequence for four sections") {
    const CnnSpec spec = make_spec(16, 4, {1, 1, 1, 1});
    const auto layers = expand_layers(spec, 10);
    std::vector<int> conv_sides;
    for (const auto& layer : layers) {
        if (layer.kind == LayerKind::conv) {
            conv_sides.push_back(layer.in_side);
        }
    }
    CHECK(conv_sides == std::vector<int>{52, 26, 13, 7});
    CHECK(layers[layers.size() - 2].in_side == 4);  // head sees the final 4x4 maps
}

TEST_CASE("count_macs: Model-1 conv MACs equal the hand-computed value") {
    const CnnSpec spec = make_spec(16, 3, {1, 1, 1});
    const auto layers = expand_layers(spec, 10);
    CHECK(count_macs(layers, false) == 7398144);
    CHECK(count_params(layers, false) ==
          16 * (3 * 9 + 1) + 32 * (16 * 9 + 1) + 64 * (32 * 9 + 1));
    // head adds exactly the fully-connected MACs
    CHECK(count_macs(layers, true) - count_macs(layers, false) == 64 * 10);
}

TEST_CASE("hidden-layer MACs scale by 4 when the base width doubles") {
    const CnnSpec narrow = make_spec(16, 3, {2, 2, 2});
    const CnnSpec wide = make_spec(32, 3, {2, 2, 2});
    const auto sum_hidden = [](const CnnSpec& spec) {
        const auto layers = expand_layers(spec, 10);
        std::int64_t total = 0;
        bool first_conv = true;
        for (const auto& layer : layers) {
            if (layer.kind != LayerKind::conv) {
                continue;
            }
            if (first_conv) {
                first_conv = false;
                continue;
            }
            total += layer.macs;
        }
        return total;
    };
    CHECK(sum_hidden(wide) == 4 * sum_hidden(narrow));
}

TEST_CASE("monotone cost: every q increment strictly increases MACs and params") {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 10; ++round) {
        const CnnSpec spec = random_spec(rng);
        const auto base_layers = expand_layers(spec);
        const std::int64_t base_macs = count_macs(base_layers);
        const std::int64_t base_params = count_params(base_layers);
        for (std::size_t i = 0; i < spec.q.size(); ++i) {
            std::vector<int> q = spec.q;
            q[i]++;
            SpecOptions options;
            options.input_side = spec.input_side;
            options.input_channels = spec.input_channels;
            options.downsample_kind = spec.downsample_kind;
            options.head = spec.head;
            const CnnSpec bigger = make_spec(spec.base_maps, spec.n_down, q, options);
            CHECK(count_macs(expand_layers(bigger)) > base_macs);
            CHECK(count_params(expand_layers(bigger)) > base_params);
        }
    }
}

TEST_CASE("width and spatial rules hold on random expansions") {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 20; ++round) {
        const CnnSpec spec = random_spec(rng);
        const auto layers = expand_layers(spec);
        int section = 0;
        for (const auto& layer : layers) {
            if (layer.kind == LayerKind::conv && layer.stride == 1) {
                CHECK(layer.out_channels == spec.base_maps << section);
            }
            const bool downsampling =
                layer.kind == LayerKind::pool ||
                (layer.kind == LayerKind::conv && layer.stride == 2);
            if (downsampling) {
                CHECK(layer.out_side == (layer.in_side + 1) / 2);
                CHECK(layer.out_side >= 1);
                ++section;
            }
        }
        CHECK(section == spec.n_down);
    }
}

TEST_CASE("enumerate_candidates default ranges contain the six published shapes") {
    const auto specs = enumerate_candidates(CandidateRanges{});
    const auto contains = [&](int s, int m, std::vector<int> q) {
        const CnnSpec target = make_spec(s, m, std::move(q));
        for (const auto& spec : specs) {
            if (spec == target) {
                return true;
            }
        }
        return false;
    };
    CHECK(contains(16, 3, {1, 1, 1}));
    CHECK(contains(16, 4, {1, 1, 1, 1}));
    CHECK(contains(64, 4, {1, 1, 1, 1}));
    CHECK(contains(64, 4, {1, 1, 2, 2}));
    CHECK(contains(64, 4, {2, 2, 2, 2}));
    CHECK(contains(64, 4, {3, 3, 3, 4}));
}

TEST_CASE("enumerate_candidates: singleton ranges give exactly one spec") {
    CandidateRanges ranges;
    ranges.base_maps = {16};
    ranges.sections = {3};
    ranges.pattern = CandidateRanges::QPattern::uniform;
    ranges.layers_per_section = {1};
    const auto specs = enumerate_candidates(ranges);
    REQUIRE(specs.size() == 1);
    CHECK(specs[0] == make_spec(16, 3, {1, 1, 1}));
}

TEST_CASE("enumerate_candidates skips side violations and rejects empty ranges") {
    CandidateRanges ranges;
    ranges.sections = {6};
    CHECK(enumerate_candidates(ranges).empty());

    CandidateRanges empty;
    empty.base_maps = {};
    CHECK_THROWS_WITH_AS(enumerate_candidates(empty), doctest::Contains("empty search space"),
                         std::invalid_argument);
}

TEST_CASE("spec JSON round trip preserves the spec and its MAC count") {
    std::mt19937_64 rng(14);
    for (int round = 0; round < 25; ++round) {
        const CnnSpec spec = random_spec(rng);
        const CnnSpec back = import_spec(export_spec(spec));
        CHECK(back == spec);
        CHECK(spec_macs(back) == spec_macs(spec));
    }
}

TEST_CASE("import_spec validates n_conv against the sum of q") {
    const std::string bad = R"({"n_conv": 5, "base_maps": 16, "n_down": 3, "q": [1, 1, 1]})";
    CHECK_THROWS_WITH_AS(import_spec(bad), doctest::Contains("n_conv"),
                         std::invalid_argument);
}

TEST_CASE("import_spec applies the documented defaults") {
    const CnnSpec spec = import_spec(R"({"base_maps": 16, "n_down": 3, "q": [1, 1, 1]})");
    CHECK(spec.input_channels == 3);
    CHECK(spec.input_side == 52);
    CHECK(spec.downsample_kind == DownsampleKind::pooling);
    CHECK(spec.head.class_count == 10);
    CHECK(spec.n_conv == 3);
}

TEST_CASE("import_spec names the offending field path") {
    CHECK_THROWS_WITH_AS(import_spec(R"({"base_maps": 16, "n_down": 2, "q": [1, "x"]})"),
                         doctest::Contains("q[1]"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(import_spec(R"({"n_down": 2, "q": [1, 1]})"),
                         doctest::Contains("base_maps"), std::invalid_argument);
}

TEST_CASE("layers_to_csv emits one row per layer plus a header") {
    const auto layers = expand_layers(make_spec(16, 3, {1, 1, 1}), 10);
    const std::string csv = layers_to_csv(layers);
    std::size_t lines = 0;
    for (char c : csv) {
        if (c == '\n') {
            ++lines;
        }
    }
    CHECK(lines == layers.size() + 1);
    CHECK(csv.rfind("kind,in_ch,out_ch,in_side,out_side,stride,macs,params\n", 0) == 0);
}
