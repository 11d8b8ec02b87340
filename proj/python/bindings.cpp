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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cnnrec/ability.hpp"
#include "cnnrec/archgen.hpp"
#include "cnnrec/complexity.hpp"
#include "cnnrec/descriptor.hpp"
#include "cnnrec/image.hpp"
#include "cnnrec/ingest.hpp"
#include "cnnrec/matcher.hpp"
#include "cnnrec/report_io.hpp"
#include "cnnrec/version.hpp"

namespace py = pybind11;
using namespace cnnrec;

namespace {

GrayImage image_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& array) {
    if (array.ndim() != 2) {
        throw std::invalid_argument("expected a 2-D array of luminance values");
    }
    const int height = static_cast<int>(array.shape(0));
    const int width = static_cast<int>(array.shape(1));
    std::vector<double> pixels(static_cast<std::size_t>(width) * height);
    std::copy(array.data(), array.data() + pixels.size(), pixels.begin());
    return make_gray_image(width, height, std::move(pixels));
}

py::array_t<double> image_to_array(const GrayImage& image) {
    // explicit shape vector: brace-initialized shapes mis-build arrays on
    // pybind11 2.9 (single-element broadcast)
    const std::vector<py::ssize_t> shape{image.height, image.width};
    return py::array_t<double>(shape, image.pixels.data());
}

py::array_t<double> feature_to_array(const FeatureVector& feature) {
    const std::vector<py::ssize_t> shape{kDescriptorSize};
    return py::array_t<double>(shape, feature.values.data());
}

py::dict report_to_dict(const ComplexityReport& report) {
    py::dict out;
    out["dataset"] = report.dataset_name;
    out["l"] = report.sample_count;
    out["class_count"] = report.class_count;
    out["c_all"] = report.c_all;
    out["per_class_mean_c"] = report.per_class_mean_c;
    py::list per_sample;
    for (const auto& entry : report.per_sample) {
        py::dict row;
        row["id"] = entry.sample_id;
        row["class"] = entry.class_id;
        row["c"] = entry.complexity;
        row["rival"] = entry.best_rival;
        row["correct"] = entry.centroid_correct;
        per_sample.append(row);
    }
    out["per_sample"] = per_sample;
    out["descriptor_variant"] = report.descriptor_variant;
    return out;
}

SpecOptions options_from_kwargs(int input_side, int input_channels,
                                const std::string& downsample, int class_count) {
    SpecOptions options;
    options.input_side = input_side;
    options.input_channels = input_channels;
    options.downsample_kind = downsample_kind_from_string(downsample);
    options.head.class_count = class_count;
    return options;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Training-free CNN recommendation toolkit: dataset complexity scores, "
              "architecture ability scores and task-to-model matching";
    m.attr("__version__") = kVersion;
    m.attr("DESCRIPTOR_VARIANT") = descriptor_variant();

    py::class_<LabeledDataset>(m, "Dataset")
        .def_readonly("class_count", &LabeledDataset::class_count)
        .def_readonly("name", &LabeledDataset::name)
        .def("__len__", [](const LabeledDataset& ds) { return ds.samples.size(); })
        .def("label",
             [](const LabeledDataset& ds, std::size_t index) {
                 return ds.samples.at(index).class_id;
             })
        .def("image",
             [](const LabeledDataset& ds, std::size_t index) {
                 return image_to_array(ds.samples.at(index).image);
             })
        .def("subsample", &subsample_per_class, py::arg("max_per_class"), py::arg("seed"));

    m.def("load_idx", &load_idx, py::arg("images_path"), py::arg("labels_path"));
    m.def("load_cifar_binary", &load_cifar_binary, py::arg("paths"), py::arg("class_count"));
    m.def("load_image_dir", &load_image_dir, py::arg("root"));
    m.def("synth_blob_task", &synth_blob_task, py::arg("class_count"),
          py::arg("samples_per_class"), py::arg("image_side"), py::arg("separation"),
          py::arg("noise_sigma"), py::arg("seed"));
    m.def("write_idx", &write_idx, py::arg("dataset"), py::arg("images_path"),
          py::arg("labels_path"));

    m.def(
        "extract_descriptor",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image) {
            return feature_to_array(extract_global_descriptor(image_from_array(image)));
        },
        py::arg("image"), "64-dimensional whole-image descriptor of a [0,1] luminance array");

    m.def(
        "dataset_complexity",
        [](const LabeledDataset& dataset) { return report_to_dict(dataset_complexity(dataset)); },
        py::arg("dataset"));

    m.def(
        "simulate_multiclass_error",
        [](int max_classes, double separation, double sigma, std::int64_t trials,
           std::uint64_t seed) {
            const SimulationReport report =
                simulate_multiclass_error(max_classes, separation, sigma, trials, seed);
            py::list rows;
            for (const auto& row : report.rows) {
                py::dict entry;
                entry["classes"] = row.class_count;
                entry["error_rate"] = row.error_rate;
                entry["ratio_to_two_class"] = row.ratio_to_two_class;
                rows.append(entry);
            }
            return rows;
        },
        py::arg("max_classes"), py::arg("separation"), py::arg("sigma"), py::arg("trials"),
        py::arg("seed"));

    py::enum_<DownsampleKind>(m, "DownsampleKind")
        .value("pooling", DownsampleKind::pooling)
        .value("strided_conv", DownsampleKind::strided_conv);

    py::class_<CnnSpec>(m, "CnnSpec")
        .def_readonly("n_conv", &CnnSpec::n_conv)
        .def_readonly("base_maps", &CnnSpec::base_maps)
        .def_readonly("n_down", &CnnSpec::n_down)
        .def_readonly("q", &CnnSpec::q)
        .def_readonly("input_side", &CnnSpec::input_side)
        .def_readonly("input_channels", &CnnSpec::input_channels)
        .def_readonly("downsample_kind", &CnnSpec::downsample_kind)
        .def_property_readonly("class_count",
                               [](const CnnSpec& spec) { return spec.head.class_count; })
        .def("macs", [](const CnnSpec& spec) { return spec_macs(spec); })
        .def("to_json", &export_spec)
        .def("__eq__", [](const CnnSpec& a, const CnnSpec& b) { return a == b; })
        .def("__repr__", [](const CnnSpec& spec) {
            std::string q;
            for (std::size_t i = 0; i < spec.q.size(); ++i) {
                q += (i ? "," : "") + std::to_string(spec.q[i]);
            }
            return "CnnSpec(N=" + std::to_string(spec.n_conv) +
                   ", S=" + std::to_string(spec.base_maps) +
                   ", M=" + std::to_string(spec.n_down) + ", q=(" + q + "))";
        });

    m.def(
        "make_spec",
        [](int base_maps, int n_down, const std::vector<int>& q, int input_side,
           int input_channels, const std::string& downsample, int class_count) {
            return make_spec(base_maps, n_down, q,
                             options_from_kwargs(input_side, input_channels, downsample,
                                                 class_count));
        },
        py::arg("base_maps"), py::arg("n_down"), py::arg("q"), py::arg("input_side") = 52,
        py::arg("input_channels") = 3, py::arg("downsample") = "pooling",
        py::arg("class_count") = 10);
    m.def("import_spec", &import_spec, py::arg("json_text"));

    m.def(
        "expand_layers",
        [](const CnnSpec& spec) {
            py::list rows;
            for (const auto& layer : expand_layers(spec)) {
                py::dict entry;
                entry["kind"] = to_string(layer.kind);
                entry["in_channels"] = layer.in_channels;
                entry["out_channels"] = layer.out_channels;
                entry["in_side"] = layer.in_side;
                entry["out_side"] = layer.out_side;
                entry["stride"] = layer.stride;
                entry["macs"] = layer.macs;
                entry["params"] = layer.params;
                rows.append(entry);
            }
            return rows;
        },
        py::arg("spec"));

    m.def(
        "count_macs",
        [](const CnnSpec& spec, bool include_head) {
            return count_macs(expand_layers(spec), include_head);
        },
        py::arg("spec"), py::arg("include_head") = true);
    m.def(
        "count_params",
        [](const CnnSpec& spec, bool include_head) {
            return count_params(expand_layers(spec), include_head);
        },
        py::arg("spec"), py::arg("include_head") = true);

    m.def("enumerate_candidates", [] { return enumerate_candidates(CandidateRanges{}); });

    py::class_<AbilityParams>(m, "AbilityParams")
        .def_readonly("a0", &AbilityParams::a0)
        .def_readonly("a1", &AbilityParams::a1)
        .def_readonly("n0", &AbilityParams::n0)
        .def_readonly("gamma", &AbilityParams::gamma)
        .def_readonly("fit_residuals", &AbilityParams::fit_residuals)
        .def("to_json", &export_ability_params);
    m.def("import_ability_params", &import_ability_params, py::arg("json_text"));

    m.def("table1_anchors", [] {
        py::list anchors;
        for (const auto& anchor : table1_anchors()) {
            anchors.append(py::make_tuple(anchor.name, anchor.spec, anchor.chi));
        }
        return anchors;
    });
    m.def(
        "calibrate",
        [](const std::vector<std::pair<CnnSpec, double>>& anchors, double n0, double gamma) {
            std::vector<AbilityAnchor> converted;
            for (const auto& [spec, chi] : anchors) {
                converted.push_back({"", spec, chi});
            }
            return calibrate(converted, n0, gamma);
        },
        py::arg("anchors"), py::arg("n0") = 50.0, py::arg("gamma") = 0.05);
    m.def("calibrate_table1", [] { return calibrate(table1_anchors()); });
    m.def("ability_score", &ability_score, py::arg("spec"), py::arg("params"));
    m.def(
        "ability_ceiling",
        [](const AbilityParams& params, int base_maps, int n_down) {
            const AbilityCeiling ceiling = ability_ceiling(params, base_maps, n_down);
            return py::make_tuple(ceiling.depth, ceiling.chi);
        },
        py::arg("params"), py::arg("base_maps"), py::arg("n_down"));

    py::class_<MatchingFunction>(m, "MatchingFunction")
        .def("__call__", &MatchingFunction::evaluate, py::arg("c_all"))
        .def("to_json", &export_matching);
    m.def(
        "fit_matching",
        [](const std::vector<std::tuple<std::string, double, double>>& pairs,
           const std::string& kind) {
            std::vector<CalibrationPair> converted;
            for (const auto& [task, c_all, chi] : pairs) {
                converted.push_back({task, c_all, chi});
            }
            return fit_matching(converted, matching_kind_from_string(kind));
        },
        py::arg("pairs"), py::arg("kind") = "linear");
    m.def("import_matching", &import_matching, py::arg("json_text"));

    m.def(
        "recommend",
        [](double c_all, const std::vector<CnnSpec>& candidates, const AbilityParams& params,
           const MatchingFunction& matching, double margin) {
            const Recommendation rec = recommend(c_all, candidates, params, matching, margin);
            py::dict out;
            out["chosen"] = rec.chosen;
            out["target_chi"] = rec.target_chi;
            out["chosen_chi"] = rec.chosen_chi;
            out["undershoot"] = rec.undershoot;
            py::list table;
            for (const auto& candidate : rec.candidates) {
                table.append(py::make_tuple(candidate.spec, candidate.chi, candidate.macs));
            }
            out["candidates"] = table;
            return out;
        },
        py::arg("c_all"), py::arg("candidates"), py::arg("params"), py::arg("matching"),
        py::arg("margin") = 0.05);

    py::class_<PerformanceCurve>(m, "PerformanceCurve")
        .def_readonly("a", &PerformanceCurve::a)
        .def_readonly("b", &PerformanceCurve::b)
        .def("predict", [](const PerformanceCurve& curve,
                           double t) { return predict_rate(curve, t); },
             py::arg("forward_time"));
    m.def(
        "fit_performance_curve",
        [](std::pair<double, double> first, std::pair<double, double> second) {
            return fit_performance_curve({first.first, first.second},
                                         {second.first, second.second});
        },
        py::arg("anchor_a"), py::arg("anchor_b"),
        "Anchors are (forward_time_seconds, validation_rate) pairs");
    m.def("estimate_forward_time", &estimate_forward_time, py::arg("spec"),
          py::arg("macs_per_second"));
}
