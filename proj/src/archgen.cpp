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

#include "cnnrec/archgen.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace cnnrec {

namespace {

using nlohmann::json;

int ceil_halve(int side) {
    return (side + 1) / 2;
}

// Sides entering sections 1..M; every entry must admit a 3x3 kernel.
std::vector<int> section_sides(int input_side, int n_down) {
    std::vector<int> sides;
    int side = input_side;
    for (int i = 0; i < n_down; ++i) {
        sides.push_back(side);
        side = ceil_halve(side);
    }
    return sides;
}

int max_sections_for(int input_side) {
    int side = input_side;
    int sections = 0;
    while (side >= 3) {
        ++sections;
        side = ceil_halve(side);
    }
    return sections;
}

} // namespace

std::string to_string(DownsampleKind kind) {
    return kind == DownsampleKind::pooling ? "pooling" : "strided-conv";
}

DownsampleKind downsample_kind_from_string(const std::string& text) {
    if (text == "pooling") {
        return DownsampleKind::pooling;
    }
    if (text == "strided-conv") {
        return DownsampleKind::strided_conv;
    }
    throw std::invalid_argument("downsample_kind: unknown value '" + text +
                                "' (want pooling | strided-conv)");
}

std::string to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::conv: return "conv";
        case LayerKind::pool: return "pool";
        case LayerKind::global_pool: return "global-pool";
        case LayerKind::fully_connected: return "fully-connected";
    }
    return "?";
}

bool spec_less(const CnnSpec& a, const CnnSpec& b) {
    return std::tie(a.n_conv, a.base_maps, a.n_down, a.q, a.input_side, a.input_channels,
                    a.downsample_kind, a.head.class_count) <
           std::tie(b.n_conv, b.base_maps, b.n_down, b.q, b.input_side, b.input_channels,
                    b.downsample_kind, b.head.class_count);
}

CnnSpec make_spec(int base_maps, int n_down, std::vector<int> q, const SpecOptions& options) {
    if (base_maps < 1) {
        throw std::invalid_argument("base_maps must be >= 1, got " + std::to_string(base_maps));
    }
    if (n_down < 1) {
        throw std::invalid_argument("n_down must be >= 1, got " + std::to_string(n_down));
    }
    if (q.empty()) {
        throw std::invalid_argument("q must not be empty");
    }
    if (static_cast<int>(q.size()) != n_down) {
        throw std::invalid_argument("q length " + std::to_string(q.size()) +
                                    " does not match n_down " + std::to_string(n_down));
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < 1) {
            throw std::invalid_argument("q[" + std::to_string(i) + "] must be >= 1, got " +
                                        std::to_string(q[i]));
        }
    }
    if (options.input_side < 3) {
        throw std::invalid_argument("input_side must be >= 3, got " +
                                    std::to_string(options.input_side));
    }
    if (options.input_channels < 1) {
        throw std::invalid_argument("input_channels must be >= 1, got " +
                                    std::to_string(options.input_channels));
    }
    if (options.head.class_count < 1) {
        throw std::invalid_argument("head.class_count must be >= 1, got " +
                                    std::to_string(options.head.class_count));
    }
    const auto sides = section_sides(options.input_side, n_down);
    if (sides.back() < 3) {
        throw std::invalid_argument(
            "spatial side " + std::to_string(sides.back()) + " entering section " +
            std::to_string(n_down) + " is too small for 3x3 kernels (input " +
            std::to_string(options.input_side) + " supports at most " +
            std::to_string(max_sections_for(options.input_side)) + " down-sampling sections)");
    }

    CnnSpec spec;
    spec.n_conv = std::accumulate(q.begin(), q.end(), 0);
    spec.base_maps = base_maps;
    spec.n_down = n_down;
    spec.q = std::move(q);
    spec.input_side = options.input_side;
    spec.input_channels = options.input_channels;
    spec.downsample_kind = options.downsample_kind;
    spec.head = options.head;
    return spec;
}

namespace {

LayerDescriptor conv_layer(int in_channels, int out_channels, int in_side, int stride) {
    LayerDescriptor layer;
    layer.kind = LayerKind::conv;
    layer.in_channels = in_channels;
    layer.out_channels = out_channels;
    layer.in_side = in_side;
    layer.out_side = stride == 1 ? in_side : ceil_halve(in_side);
    layer.kernel = 3;
    layer.stride = stride;
    layer.padding = 1;
    layer.macs = static_cast<std::int64_t>(layer.out_side) * layer.out_side * out_channels *
                 in_channels * 9;
    layer.params = static_cast<std::int64_t>(out_channels) * (static_cast<std::int64_t>(in_channels) * 9 + 1);
    return layer;
}

} // namespace

std::vector<LayerDescriptor> expand_layers(const CnnSpec& spec, int class_count) {
    if (class_count < 1) {
        throw std::invalid_argument("class_count must be >= 1, got " +
                                    std::to_string(class_count));
    }

    std::vector<LayerDescriptor> layers;
    int side = spec.input_side;
    int channels = spec.input_channels;
    for (int section = 0; section < spec.n_down; ++section) {
        const int width = spec.base_maps << section;
        for (int layer_index = 0; layer_index < spec.q[static_cast<std::size_t>(section)];
             ++layer_index) {
            layers.push_back(conv_layer(channels, width, side, 1));
            channels = width;
        }
        if (spec.downsample_kind == DownsampleKind::pooling) {
            LayerDescriptor pool;
            pool.kind = LayerKind::pool;
            pool.in_channels = channels;
            pool.out_channels = channels;
            pool.in_side = side;
            pool.out_side = ceil_halve(side);
            pool.kernel = 3;
            pool.stride = 2;
            pool.padding = 0;
            layers.push_back(pool);
        } else {
            layers.push_back(conv_layer(channels, 2 * channels, side, 2));
            channels = 2 * channels;
        }
        side = ceil_halve(side);
    }

    LayerDescriptor gap;
    gap.kind = LayerKind::global_pool;
    gap.in_channels = channels;
    gap.out_channels = channels;
    gap.in_side = side;
    gap.out_side = 1;
    gap.kernel = 0;
    gap.stride = 1;
    layers.push_back(gap);

    LayerDescriptor fc;
    fc.kind = LayerKind::fully_connected;
    fc.in_channels = channels;
    fc.out_channels = class_count;
    fc.in_side = 1;
    fc.out_side = 1;
    fc.kernel = 0;
    fc.stride = 1;
    fc.macs = static_cast<std::int64_t>(channels) * class_count;
    fc.params = static_cast<std::int64_t>(class_count) * (channels + 1);
    layers.push_back(fc);

    return layers;
}

std::vector<LayerDescriptor> expand_layers(const CnnSpec& spec) {
    return expand_layers(spec, spec.head.class_count);
}

namespace {

bool is_head_layer(const LayerDescriptor& layer) {
    return layer.kind == LayerKind::global_pool || layer.kind == LayerKind::fully_connected;
}

} // namespace

std::int64_t count_macs(std::span<const LayerDescriptor> layers, bool include_head) {
    std::int64_t total = 0;
    for (const auto& layer : layers) {
        if (!include_head && is_head_layer(layer)) {
            continue;
        }
        total += layer.macs;
    }
    return total;
}

std::int64_t count_params(std::span<const LayerDescriptor> layers, bool include_head) {
    std::int64_t total = 0;
    for (const auto& layer : layers) {
        if (!include_head && is_head_layer(layer)) {
            continue;
        }
        total += layer.params;
    }
    return total;
}

std::int64_t spec_macs(const CnnSpec& spec) {
    const auto layers = expand_layers(spec);
    return count_macs(layers);
}

namespace {

void emit_q_tuples(int sections, int max_entry, bool nondecreasing, std::vector<int>& current,
                   const std::vector<int>& allowed, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == sections) {
        out.push_back(current);
        return;
    }
    for (int value : allowed) {
        if (nondecreasing && !current.empty() && value < current.back()) {
            continue;
        }
        if (value > max_entry) {
            continue;
        }
        current.push_back(value);
        emit_q_tuples(sections, max_entry, nondecreasing, current, allowed, out);
        current.pop_back();
    }
}

} // namespace

std::vector<CnnSpec> enumerate_candidates(const CandidateRanges& ranges) {
    if (ranges.base_maps.empty() || ranges.sections.empty() ||
        ranges.layers_per_section.empty()) {
        throw std::invalid_argument("empty search space: all ranges need at least one value");
    }

    std::vector<int> base_maps = ranges.base_maps;
    std::vector<int> sections = ranges.sections;
    std::vector<int> layer_counts = ranges.layers_per_section;
    std::sort(base_maps.begin(), base_maps.end());
    std::sort(sections.begin(), sections.end());
    std::sort(layer_counts.begin(), layer_counts.end());

    std::vector<CnnSpec> specs;
    for (int s : base_maps) {
        for (int m : sections) {
            std::vector<std::vector<int>> tuples;
            if (ranges.pattern == CandidateRanges::QPattern::uniform) {
                for (int k : layer_counts) {
                    tuples.push_back(std::vector<int>(static_cast<std::size_t>(m), k));
                }
            } else {
                std::vector<int> current;
                emit_q_tuples(m, layer_counts.back(), true, current, layer_counts, tuples);
            }
            for (auto& q : tuples) {
                try {
                    specs.push_back(make_spec(s, m, q, ranges.options));
                } catch (const std::invalid_argument&) {
                    // invalid combination (e.g. too many sections): skipped
                }
            }
        }
    }
    return specs;
}

std::string export_spec(const CnnSpec& spec) {
    json doc;
    doc["n_conv"] = spec.n_conv;
    doc["base_maps"] = spec.base_maps;
    doc["n_down"] = spec.n_down;
    doc["q"] = spec.q;
    doc["input_side"] = spec.input_side;
    doc["input_channels"] = spec.input_channels;
    doc["downsample_kind"] = to_string(spec.downsample_kind);
    doc["head"] = {{"class_count", spec.head.class_count}};
    return doc.dump(2) + "\n";
}

namespace {

int require_int(const json& doc, const std::string& field) {
    if (!doc.contains(field)) {
        throw std::invalid_argument(field + ": missing required field");
    }
    if (!doc[field].is_number_integer()) {
        throw std::invalid_argument(field + ": expected an integer");
    }
    return doc[field].get<int>();
}

int optional_int(const json& doc, const std::string& field, int fallback) {
    if (!doc.contains(field)) {
        return fallback;
    }
    if (!doc[field].is_number_integer()) {
        throw std::invalid_argument(field + ": expected an integer");
    }
    return doc[field].get<int>();
}

} // namespace

CnnSpec import_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("spec JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("spec JSON: expected an object");
    }

    const int base_maps = require_int(doc, "base_maps");
    const int n_down = require_int(doc, "n_down");
    if (!doc.contains("q") || !doc["q"].is_array()) {
        throw std::invalid_argument("q: missing or not an array");
    }
    std::vector<int> q;
    for (std::size_t i = 0; i < doc["q"].size(); ++i) {
        if (!doc["q"][i].is_number_integer()) {
            throw std::invalid_argument("q[" + std::to_string(i) + "]: expected an integer");
        }
        q.push_back(doc["q"][i].get<int>());
    }

    SpecOptions options;
    options.input_side = optional_int(doc, "input_side", 52);
    options.input_channels = optional_int(doc, "input_channels", 3);
    if (doc.contains("downsample_kind")) {
        if (!doc["downsample_kind"].is_string()) {
            throw std::invalid_argument("downsample_kind: expected a string");
        }
        options.downsample_kind =
            downsample_kind_from_string(doc["downsample_kind"].get<std::string>());
    }
    if (doc.contains("head")) {
        if (!doc["head"].is_object()) {
            throw std::invalid_argument("head: expected an object");
        }
        options.head.class_count = optional_int(doc["head"], "class_count", 10);
    }

    CnnSpec spec = make_spec(base_maps, n_down, std::move(q), options);
    if (doc.contains("n_conv")) {
        const int declared = require_int(doc, "n_conv");
        if (declared != spec.n_conv) {
            throw std::invalid_argument("n_conv: expected " + std::to_string(spec.n_conv) +
                                        " (= sum of q), got " + std::to_string(declared));
        }
    }
    return spec;
}

std::string layers_to_csv(std::span<const LayerDescriptor> layers) {
    std::ostringstream out;
    out << "kind,in_ch,out_ch,in_side,out_side,stride,macs,params\n";
    for (const auto& layer : layers) {
        out << to_string(layer.kind) << ',' << layer.in_channels << ',' << layer.out_channels
            << ',' << layer.in_side << ',' << layer.out_side << ',' << layer.stride << ','
            << layer.macs << ',' << layer.params << '\n';
    }
    return out.str();
}

} // namespace cnnrec
