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
#include <span>
#include <string>
#include <vector>

namespace cnnrec {

enum class DownsampleKind {
    pooling,      // 3x3 max pool, stride 2
    strided_conv, // 3x3 conv, stride 2, doubles channels
};

std::string to_string(DownsampleKind kind);
DownsampleKind downsample_kind_from_string(const std::string& text);

struct HeadSpec {
    int class_count = 10;  // global average pool + one fully-connected layer

    bool operator==(const HeadSpec&) const = default;
};

struct SpecOptions {
    int input_side = 52;
    int input_channels = 3;
    DownsampleKind downsample_kind = DownsampleKind::pooling;
    HeadSpec head{};
};

/// Rule-generated CNN architecture: M sections of equal-width 3x3 stride-1
/// convolutions, each section followed by one down-sampling layer after
/// which feature maps double and the spatial side halves (ceil). Section i
/// runs q[i] convolutions at width base_maps * 2^i.
struct CnnSpec {
    int n_conv = 0;            // N, total convolutional layers in sections
    int base_maps = 0;         // S, feature maps of the first section
    int n_down = 0;            // M, number of down-sampling layers
    std::vector<int> q;        // layers per section, length M, sum == N
    int input_side = 52;
    int input_channels = 3;
    DownsampleKind downsample_kind = DownsampleKind::pooling;
    HeadSpec head{};

    bool operator==(const CnnSpec&) const = default;
};

/// Total order used for deterministic tie-breaking and enumeration:
/// (n_conv, base_maps, n_down, q, input_side, input_channels,
/// downsample_kind, head.class_count), lexicographic.
bool spec_less(const CnnSpec& a, const CnnSpec& b);

/// Builds a validated spec from (S, M, q). N is computed as the sum of q.
/// Rejects: q length != M, nonpositive entries, nonpositive S, and
/// configurations where a section's input side falls under 3 pixels
/// (input 52 admits at most 5 down-sampling sections under ceil-halving).
CnnSpec make_spec(int base_maps, int n_down, std::vector<int> q,
                  const SpecOptions& options = {});

enum class LayerKind { conv, pool, global_pool, fully_connected };

std::string to_string(LayerKind kind);

struct LayerDescriptor {
    LayerKind kind = LayerKind::conv;
    int in_channels = 0;
    int out_channels = 0;
    int in_side = 0;
    int out_side = 0;
    int kernel = 0;  // 3 for conv/pool, 0 where not applicable
    int stride = 1;
    int padding = 0;
    std::int64_t macs = 0;
    std::int64_t params = 0;
};

/// Expands a spec to its concrete layer list, head included (global average
/// pool + fully-connected to `class_count`). Spatial sides follow
/// ceil-halving from the input side; conv MACs are out_side^2 * out_ch *
/// in_ch * 9, pooling layers count zero MACs and parameters.
std::vector<LayerDescriptor> expand_layers(const CnnSpec& spec, int class_count);

/// Convenience overload targeting spec.head.class_count.
std::vector<LayerDescriptor> expand_layers(const CnnSpec& spec);

std::int64_t count_macs(std::span<const LayerDescriptor> layers, bool include_head = true);
std::int64_t count_params(std::span<const LayerDescriptor> layers, bool include_head = true);

/// MAC count of a spec with the head included.
std::int64_t spec_macs(const CnnSpec& spec);

/// Search-space constraints for the recommender's candidate enumeration.
struct CandidateRanges {
    std::vector<int> base_maps{16, 32, 64};
    std::vector<int> sections{3, 4};
    enum class QPattern { uniform, nondecreasing } pattern = QPattern::nondecreasing;
    std::vector<int> layers_per_section{1, 2, 3, 4};
    SpecOptions options{};
};

/// Deterministic lexicographic enumeration of all specs allowed by the
/// ranges; specs failing validation (e.g. too many sections for the input
/// side) are skipped. The default ranges contain all six published reference
/// models. Throws std::invalid_argument when a range is empty.
std::vector<CnnSpec> enumerate_candidates(const CandidateRanges& ranges);

/// JSON document round-trip. import_spec(export_spec(s)) == s for any valid
/// spec; schema violations throw std::invalid_argument naming the field path.
/// Omitted optional fields take defaults (input_channels 3, input_side 52,
/// downsample_kind "pooling", head.class_count 10); an n_conv field that
/// disagrees with sum(q) is rejected.
std::string export_spec(const CnnSpec& spec);
CnnSpec import_spec(const std::string& json_text);

/// CSV dump of an expanded layer list:
/// kind,in_ch,out_ch,in_side,out_side,stride,macs,params.
std::string layers_to_csv(std::span<const LayerDescriptor> layers);

} // namespace cnnrec
