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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cnnrec/ability.hpp"
#include "cnnrec/archgen.hpp"
#include "cnnrec/complexity.hpp"
#include "cnnrec/descriptor.hpp"
#include "cnnrec/errors.hpp"
#include "cnnrec/image.hpp"
#include "cnnrec/ingest.hpp"
#include "cnnrec/matcher.hpp"
#include "cnnrec/report_io.hpp"
#include "cnnrec/version.hpp"

namespace {

using nlohmann::json;

struct DatasetArgs {
    std::string format = "idx";
    std::string images;
    std::string labels;
    std::vector<std::string> cifar_paths;
    int cifar_classes = 10;
    std::string root;
    int synth_classes = 10;
    int synth_per_class = 100;
    int synth_side = 32;
    double synth_separation = 1.0;
    double synth_noise = 0.1;
    std::uint64_t seed = 1;
    std::size_t max_per_class = 0;
};

void add_dataset_flags(CLI::App* cmd, DatasetArgs& args) {
    cmd->add_option("--format", args.format, "Dataset format: idx | cifar | dir | synth")
        ->check(CLI::IsMember({"idx", "cifar", "dir", "synth"}))
        ->capture_default_str();
    cmd->add_option("--images", args.images, "IDX image file");
    cmd->add_option("--labels", args.labels, "IDX label file");
    cmd->add_option("--paths", args.cifar_paths, "CIFAR binary files")->delimiter(',');
    cmd->add_option("--cifar-classes", args.cifar_classes, "CIFAR class count")
        ->capture_default_str();
    cmd->add_option("--root", args.root, "Image directory root (one subdirectory per class)");
    cmd->add_option("--classes", args.synth_classes, "Synthetic class count")
        ->capture_default_str();
    cmd->add_option("--per-class", args.synth_per_class, "Synthetic samples per class")
        ->capture_default_str();
    cmd->add_option("--side", args.synth_side, "Synthetic image side")->capture_default_str();
    cmd->add_option("--separation", args.synth_separation, "Synthetic class separation")
        ->capture_default_str();
    cmd->add_option("--noise", args.synth_noise, "Synthetic pixel noise sigma")
        ->capture_default_str();
    cmd->add_option("--seed", args.seed, "Seed for stochastic steps")->capture_default_str();
    cmd->add_option("--max-per-class", args.max_per_class,
                    "Cap samples per class (0 = no cap, seeded uniform choice)")
        ->capture_default_str();
}

cnnrec::LabeledDataset resolve_dataset(const DatasetArgs& args) {
    cnnrec::LabeledDataset dataset;
    if (args.format == "idx") {
        if (args.images.empty() || args.labels.empty()) {
            throw std::invalid_argument("idx format needs --images and --labels");
        }
        dataset = cnnrec::load_idx(args.images, args.labels);
    } else if (args.format == "cifar") {
        if (args.cifar_paths.empty()) {
            throw std::invalid_argument("cifar format needs --paths");
        }
        dataset = cnnrec::load_cifar_binary(args.cifar_paths, args.cifar_classes);
    } else if (args.format == "dir") {
        if (args.root.empty()) {
            throw std::invalid_argument("dir format needs --root");
        }
        dataset = cnnrec::load_image_dir(args.root);
    } else {
        dataset = cnnrec::synth_blob_task(args.synth_classes, args.synth_per_class,
                                          args.synth_side, args.synth_separation,
                                          args.synth_noise, args.seed);
    }
    if (args.max_per_class > 0) {
        dataset = cnnrec::subsample_per_class(dataset, args.max_per_class, args.seed);
    }
    return dataset;
}

json dataset_config(const DatasetArgs& args) {
    json cfg;
    cfg["format"] = args.format;
    if (args.format == "idx") {
        cfg["images"] = args.images;
        cfg["labels"] = args.labels;
    } else if (args.format == "cifar") {
        cfg["paths"] = args.cifar_paths;
        cfg["cifar_classes"] = args.cifar_classes;
    } else if (args.format == "dir") {
        cfg["root"] = args.root;
    } else {
        cfg["classes"] = args.synth_classes;
        cfg["per_class"] = args.synth_per_class;
        cfg["side"] = args.synth_side;
        cfg["separation"] = args.synth_separation;
        cfg["noise"] = args.synth_noise;
    }
    cfg["seed"] = args.seed;
    cfg["max_per_class"] = args.max_per_class;
    return cfg;
}

void write_json_report(const std::string& path, json payload, json config,
                       const std::string& command) {
    config["command"] = command;
    payload["config"] = std::move(config);
    payload["version"] = cnnrec::kVersion;
    cnnrec::atomic_write_file(path, payload.dump(2) + "\n");
}

cnnrec::AbilityParams load_or_default_params(const std::string& path) {
    if (path.empty()) {
        return cnnrec::calibrate(cnnrec::table1_anchors());
    }
    return cnnrec::import_ability_params(cnnrec::read_text_file(path));
}

std::vector<cnnrec::CnnSpec> load_candidates(const std::string& path) {
    if (path.empty()) {
        return cnnrec::enumerate_candidates(cnnrec::CandidateRanges{});
    }
    const json doc = json::parse(cnnrec::read_text_file(path));
    if (!doc.is_array()) {
        throw std::invalid_argument("candidates file: expected a JSON array of specs");
    }
    std::vector<cnnrec::CnnSpec> specs;
    for (const auto& element : doc) {
        specs.push_back(cnnrec::import_spec(element.dump()));
    }
    return specs;
}

std::vector<cnnrec::AbilityAnchor> load_anchors(const std::string& path) {
    if (path.empty()) {
        return cnnrec::table1_anchors();
    }
    const json doc = json::parse(cnnrec::read_text_file(path));
    if (!doc.is_array()) {
        throw std::invalid_argument("anchors file: expected a JSON array");
    }
    std::vector<cnnrec::AbilityAnchor> anchors;
    for (const auto& element : doc) {
        cnnrec::AbilityAnchor anchor;
        anchor.name = element.value("name", std::string{});
        anchor.chi = element.at("chi").get<double>();
        anchor.spec = cnnrec::import_spec(element.at("spec").dump());
        anchors.push_back(std::move(anchor));
    }
    return anchors;
}

json spec_to_json(const cnnrec::CnnSpec& spec) {
    return json::parse(cnnrec::export_spec(spec));
}

cnnrec::CurveAnchor parse_anchor(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("anchor '" + text + "': expected time,rate");
    }
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("anchor '" + text + "': expected numeric time,rate");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Training-free CNN recommendation toolkit: dataset complexity scores, "
                 "architecture ability scores and task-to-model matching"};
    app.require_subcommand(1);
    app.set_version_flag("--version", cnnrec::kVersion);

    // ---- complexity ----
    auto* cmd_complexity = app.add_subcommand(
        "complexity", "Score a dataset: per-sample complexity and the dataset average");
    DatasetArgs complexity_args;
    add_dataset_flags(cmd_complexity, complexity_args);
    std::string complexity_out = "complexity_report.json";
    std::string dump_descriptors;
    cmd_complexity->add_option("--out", complexity_out, "Report path")->capture_default_str();
    cmd_complexity->add_option("--dump-descriptors", dump_descriptors,
                               "Optional descriptor CSV path");

    // ---- gen-model ----
    auto* cmd_gen = app.add_subcommand("gen-model",
                                       "Generate a CNN spec from the rule parameters");
    int gen_base_maps = 16;
    int gen_sections = 3;
    std::vector<int> gen_q;
    std::string gen_downsample = "pooling";
    int gen_input_side = 52;
    int gen_channels = 3;
    int gen_classes = 10;
    std::string gen_out = "model_spec.json";
    std::string gen_layers_csv;
    cmd_gen->add_option("--base-maps,-S", gen_base_maps, "Feature maps of the first section")
        ->capture_default_str();
    cmd_gen->add_option("--sections,-M", gen_sections, "Down-sampling layer count")
        ->capture_default_str();
    cmd_gen->add_option("--q", gen_q, "Conv layers per section, e.g. 1,1,2")
        ->delimiter(',')
        ->required();
    cmd_gen->add_option("--downsample", gen_downsample, "pooling | strided-conv")
        ->check(CLI::IsMember({"pooling", "strided-conv"}))
        ->capture_default_str();
    cmd_gen->add_option("--input-side", gen_input_side, "Input image side")
        ->capture_default_str();
    cmd_gen->add_option("--channels", gen_channels, "Input channels")->capture_default_str();
    cmd_gen->add_option("--classes", gen_classes, "Classifier head class count")
        ->capture_default_str();
    cmd_gen->add_option("--out", gen_out, "Spec JSON path")->capture_default_str();
    cmd_gen->add_option("--layers-csv", gen_layers_csv, "Optional layer dump CSV path");

    // ---- ability ----
    auto* cmd_ability = app.add_subcommand("ability", "Score a spec's classification ability");
    std::string ability_spec_path;
    std::string ability_params_path;
    std::string ability_out;
    cmd_ability->add_option("--spec", ability_spec_path, "Spec JSON path")->required();
    cmd_ability->add_option("--params", ability_params_path,
                            "Ability params JSON (default: built-in reference calibration)");
    cmd_ability->add_option("--out", ability_out, "Optional result JSON path");

    // ---- calibrate ----
    auto* cmd_calibrate = app.add_subcommand(
        "calibrate", "Fit ability coefficients against (model, score) anchors");
    std::string calibrate_anchors_path;
    double calibrate_n0 = 50.0;
    double calibrate_gamma = 0.05;
    std::string calibrate_out = "ability_params.json";
    cmd_calibrate->add_option("--anchors", calibrate_anchors_path,
                              "Anchor JSON file (default: built-in reference models)");
    cmd_calibrate->add_option("--n0", calibrate_n0, "Depth-correction threshold")
        ->capture_default_str();
    cmd_calibrate->add_option("--gamma", calibrate_gamma, "Depth-correction steepness")
        ->capture_default_str();
    cmd_calibrate->add_option("--out", calibrate_out, "Params JSON path")
        ->capture_default_str();

    // ---- fit-match ----
    auto* cmd_fit_match = app.add_subcommand(
        "fit-match", "Fit the complexity-to-ability matching function");
    std::string fit_match_calibration;
    std::string fit_match_kind = "linear";
    std::string fit_match_out = "matching.json";
    cmd_fit_match->add_option("--calibration", fit_match_calibration,
                              "Calibration pairs (JSON lines: task, c_all, chi_optimal)")
        ->required();
    cmd_fit_match->add_option("--kind", fit_match_kind, "linear | isotonic-decreasing")
        ->check(CLI::IsMember({"linear", "isotonic-decreasing"}))
        ->capture_default_str();
    cmd_fit_match->add_option("--out", fit_match_out, "Matching JSON path")
        ->capture_default_str();

    // ---- recommend ----
    auto* cmd_recommend = app.add_subcommand(
        "recommend", "Recommend the architecture matching a complexity score");
    double recommend_c_all = -1.0;
    std::string recommend_report;
    std::string recommend_params_path;
    std::string recommend_match_path;
    std::string recommend_calibration;
    std::string recommend_match_kind = "linear";
    std::string recommend_candidates_path;
    double recommend_margin = 0.05;
    std::string recommend_out = "recommendation.json";
    cmd_recommend->add_option("--c-all", recommend_c_all, "Dataset complexity score");
    cmd_recommend->add_option("--report", recommend_report,
                              "Complexity report JSON (alternative to --c-all)");
    cmd_recommend->add_option("--params", recommend_params_path,
                              "Ability params JSON (default: built-in reference calibration)");
    cmd_recommend->add_option("--match", recommend_match_path, "Fitted matching JSON");
    cmd_recommend->add_option("--calibration", recommend_calibration,
                              "Calibration pairs to fit the matching inline");
    cmd_recommend->add_option("--match-kind", recommend_match_kind,
                              "Matching kind for inline fits")
        ->check(CLI::IsMember({"linear", "isotonic-decreasing"}))
        ->capture_default_str();
    cmd_recommend->add_option("--candidates", recommend_candidates_path,
                              "Candidate spec JSON array (default: built-in enumeration)");
    cmd_recommend->add_option("--margin", recommend_margin,
                              "Slight-overfit margin on the target ability score")
        ->capture_default_str();
    cmd_recommend->add_option("--out", recommend_out, "Recommendation JSON path")
        ->capture_default_str();

    // ---- curve ----
    auto* cmd_curve = app.add_subcommand(
        "curve", "Fit and sample the two-anchor accuracy-vs-speed performance curve");
    std::vector<std::string> curve_anchors;
    int curve_points = 50;
    std::string curve_out = "curve.csv";
    cmd_curve->add_option("--anchor", curve_anchors, "Anchor as time,rate (give twice)")
        ->expected(2)
        ->required();
    cmd_curve->add_option("--points", curve_points, "Log-grid sample count")
        ->capture_default_str();
    cmd_curve->add_option("--out", curve_out, "Curve CSV path")->capture_default_str();

    // ---- validate-2class ----
    auto* cmd_validate = app.add_subcommand(
        "validate-2class", "Monte-Carlo check of the 2-class conversion hypothesis");
    int validate_max_classes = 3;
    double validate_separation = 4.0;
    double validate_sigma = 1.0;
    std::int64_t validate_trials = 100000;
    std::uint64_t validate_seed = 1;
    std::string validate_out = "simulation.json";
    cmd_validate->add_option("--max-classes", validate_max_classes, "Largest class count")
        ->capture_default_str();
    cmd_validate->add_option("--separation", validate_separation, "Center separation")
        ->capture_default_str();
    cmd_validate->add_option("--sigma", validate_sigma, "Per-class Gaussian sigma")
        ->capture_default_str();
    cmd_validate->add_option("--trials", validate_trials, "Trials per class (>= 10000)")
        ->capture_default_str();
    cmd_validate->add_option("--seed", validate_seed, "Simulation seed")
        ->capture_default_str();
    cmd_validate->add_option("--out", validate_out, "Simulation JSON path")
        ->capture_default_str();

    // ---- synth ----
    auto* cmd_synth = app.add_subcommand(
        "synth", "Generate a synthetic blob dataset and write it as an IDX pair");
    DatasetArgs synth_args;
    synth_args.format = "synth";
    cmd_synth->add_option("--classes", synth_args.synth_classes, "Class count")
        ->capture_default_str();
    cmd_synth->add_option("--per-class", synth_args.synth_per_class, "Samples per class")
        ->capture_default_str();
    cmd_synth->add_option("--side", synth_args.synth_side, "Image side")
        ->capture_default_str();
    cmd_synth->add_option("--separation", synth_args.synth_separation, "Class separation")
        ->capture_default_str();
    cmd_synth->add_option("--noise", synth_args.synth_noise, "Pixel noise sigma")
        ->capture_default_str();
    cmd_synth->add_option("--seed", synth_args.seed, "Generator seed")->capture_default_str();
    std::string synth_images_out = "synth-images-idx3-ubyte";
    std::string synth_labels_out = "synth-labels-idx1-ubyte";
    cmd_synth->add_option("--out-images", synth_images_out, "IDX image file path")
        ->capture_default_str();
    cmd_synth->add_option("--out-labels", synth_labels_out, "IDX label file path")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors map to the stable scripting contract
    }

    if (cmd_complexity->parsed()) {
        const cnnrec::LabeledDataset dataset = resolve_dataset(complexity_args);
        const cnnrec::ComplexityReport report = cnnrec::dataset_complexity(dataset);
        json payload = json::parse(cnnrec::complexity_report_to_json(report));
        json config = dataset_config(complexity_args);
        config["out"] = complexity_out;
        write_json_report(complexity_out, std::move(payload), std::move(config), "complexity");
        if (!dump_descriptors.empty()) {
            const auto features = cnnrec::extract_dataset_descriptors(dataset);
            std::vector<int> labels;
            labels.reserve(dataset.samples.size());
            for (const auto& sample : dataset.samples) {
                labels.push_back(sample.class_id);
            }
            cnnrec::atomic_write_file(dump_descriptors,
                                      cnnrec::descriptors_to_csv(features, labels));
        }
        std::printf("dataset=%s l=%zu classes=%d\n", report.dataset_name.c_str(),
                    report.sample_count, report.class_count);
        std::printf("c_all = %.6f\n", report.c_all);
        return 0;
    }

    if (cmd_gen->parsed()) {
        cnnrec::SpecOptions options;
        options.input_side = gen_input_side;
        options.input_channels = gen_channels;
        options.downsample_kind = cnnrec::downsample_kind_from_string(gen_downsample);
        options.head.class_count = gen_classes;
        const cnnrec::CnnSpec spec =
            cnnrec::make_spec(gen_base_maps, gen_sections, gen_q, options);
        const auto layers = cnnrec::expand_layers(spec);

        json payload = spec_to_json(spec);
        json config = {{"base_maps", gen_base_maps}, {"sections", gen_sections},
                       {"q", gen_q},                 {"downsample", gen_downsample},
                       {"input_side", gen_input_side}, {"channels", gen_channels},
                       {"classes", gen_classes},     {"out", gen_out}};
        write_json_report(gen_out, std::move(payload), std::move(config), "gen-model");
        if (!gen_layers_csv.empty()) {
            cnnrec::atomic_write_file(gen_layers_csv, cnnrec::layers_to_csv(layers));
        }
        std::printf("n_conv=%d macs=%lld params=%lld\n", spec.n_conv,
                    static_cast<long long>(cnnrec::count_macs(layers)),
                    static_cast<long long>(cnnrec::count_params(layers)));
        return 0;
    }

    if (cmd_ability->parsed()) {
        const cnnrec::CnnSpec spec =
            cnnrec::import_spec(cnnrec::read_text_file(ability_spec_path));
        const cnnrec::AbilityParams params = load_or_default_params(ability_params_path);
        const double chi = cnnrec::ability_score(spec, params);
        if (!ability_out.empty()) {
            json payload = {{"chi", chi},
                            {"macs", cnnrec::spec_macs(spec)},
                            {"spec", spec_to_json(spec)}};
            json config = {{"spec", ability_spec_path},
                           {"params", ability_params_path},
                           {"out", ability_out}};
            write_json_report(ability_out, std::move(payload), std::move(config), "ability");
        }
        std::printf("chi = %.6f\n", chi);
        return 0;
    }

    if (cmd_calibrate->parsed()) {
        const auto anchors = load_anchors(calibrate_anchors_path);
        const cnnrec::AbilityParams params =
            cnnrec::calibrate(anchors, calibrate_n0, calibrate_gamma);
        json payload = json::parse(cnnrec::export_ability_params(params));
        json config = {{"anchors", calibrate_anchors_path.empty() ? "<built-in table>"
                                                                  : calibrate_anchors_path},
                       {"n0", calibrate_n0},
                       {"gamma", calibrate_gamma},
                       {"out", calibrate_out}};
        write_json_report(calibrate_out, std::move(payload), std::move(config), "calibrate");
        std::printf("a0 = %.6f a1 = %.6f over %zu anchors\n", params.a0, params.a1,
                    anchors.size());
        return 0;
    }

    if (cmd_fit_match->parsed()) {
        const auto pairs = cnnrec::parse_calibration_pairs(
            cnnrec::read_text_file(fit_match_calibration));
        const cnnrec::MatchingFunction matching =
            cnnrec::fit_matching(pairs, cnnrec::matching_kind_from_string(fit_match_kind));
        json payload = json::parse(cnnrec::export_matching(matching));
        json config = {{"calibration", fit_match_calibration},
                       {"kind", fit_match_kind},
                       {"out", fit_match_out}};
        write_json_report(fit_match_out, std::move(payload), std::move(config), "fit-match");
        std::printf("fitted %s matching over %zu pairs\n", fit_match_kind.c_str(),
                    pairs.size());
        return 0;
    }

    if (cmd_recommend->parsed()) {
        double c_all = recommend_c_all;
        if (!recommend_report.empty()) {
            const auto report = cnnrec::complexity_report_from_json(
                cnnrec::read_text_file(recommend_report));
            c_all = report.c_all;
        } else if (recommend_c_all < 0.0) {
            throw std::invalid_argument("recommend needs --c-all or --report");
        }

        const cnnrec::AbilityParams params = load_or_default_params(recommend_params_path);
        cnnrec::MatchingFunction matching;
        if (!recommend_match_path.empty()) {
            matching = cnnrec::import_matching(cnnrec::read_text_file(recommend_match_path));
        } else if (!recommend_calibration.empty()) {
            matching = cnnrec::fit_matching(
                cnnrec::parse_calibration_pairs(cnnrec::read_text_file(recommend_calibration)),
                cnnrec::matching_kind_from_string(recommend_match_kind));
        } else {
            throw std::invalid_argument("recommend needs --match or --calibration");
        }
        const auto candidates = load_candidates(recommend_candidates_path);

        const cnnrec::Recommendation rec =
            cnnrec::recommend(c_all, candidates, params, matching, recommend_margin);

        json payload;
        payload["target_chi"] = rec.target_chi;
        payload["chosen_chi"] = rec.chosen_chi;
        payload["undershoot"] = rec.undershoot;
        payload["chosen_spec"] = spec_to_json(rec.chosen);
        payload["candidates"] = json::array();
        for (const auto& candidate : rec.candidates) {
            payload["candidates"].push_back({{"spec", spec_to_json(candidate.spec)},
                                             {"chi", candidate.chi},
                                             {"macs", candidate.macs}});
        }
        json config = {{"c_all", c_all},
                       {"report", recommend_report},
                       {"params", recommend_params_path},
                       {"match", recommend_match_path},
                       {"calibration", recommend_calibration},
                       {"match_kind", recommend_match_kind},
                       {"candidates", recommend_candidates_path},
                       {"margin", recommend_margin},
                       {"out", recommend_out}};
        write_json_report(recommend_out, std::move(payload), std::move(config), "recommend");
        std::printf("target chi = %.6f chosen chi = %.6f (N=%d S=%d M=%d)%s\n", rec.target_chi,
                    rec.chosen_chi, rec.chosen.n_conv, rec.chosen.base_maps, rec.chosen.n_down,
                    rec.undershoot ? " [undershoot]" : "");
        return 0;
    }

    if (cmd_curve->parsed()) {
        cnnrec::CurveAnchor first = parse_anchor(curve_anchors[0]);
        cnnrec::CurveAnchor second = parse_anchor(curve_anchors[1]);
        if (second.forward_time < first.forward_time) {
            std::swap(first, second);  // resolved config is order-insensitive
        }
        const cnnrec::PerformanceCurve curve = cnnrec::fit_performance_curve(first, second);
        json config = {{"anchors", {{first.forward_time, first.rate},
                                    {second.forward_time, second.rate}}},
                       {"points", curve_points},
                       {"out", curve_out},
                       {"command", "curve"},
                       {"version", cnnrec::kVersion}};
        const std::string csv = "# config: " + config.dump() + "\n" +
                                cnnrec::curve_to_csv(curve, curve_points);
        cnnrec::atomic_write_file(curve_out, csv);
        std::printf("r(t) = min(1, %.6f + %.6f ln t)\n", curve.a, curve.b);
        return 0;
    }

    if (cmd_validate->parsed()) {
        const cnnrec::SimulationReport report = cnnrec::simulate_multiclass_error(
            validate_max_classes, validate_separation, validate_sigma, validate_trials,
            validate_seed);
        json payload = json::parse(cnnrec::simulation_report_to_json(report));
        json config = {{"max_classes", validate_max_classes},
                       {"separation", validate_separation},
                       {"sigma", validate_sigma},
                       {"trials", validate_trials},
                       {"seed", validate_seed},
                       {"out", validate_out}};
        write_json_report(validate_out, std::move(payload), std::move(config),
                          "validate-2class");
        for (const auto& row : report.rows) {
            std::printf("n=%d error_rate=%.6f ratio=%.4f\n", row.class_count, row.error_rate,
                        row.ratio_to_two_class);
        }
        return 0;
    }

    if (cmd_synth->parsed()) {
        const cnnrec::LabeledDataset dataset = resolve_dataset(synth_args);
        cnnrec::write_idx(dataset, synth_images_out, synth_labels_out);
        std::printf("wrote %zu samples (%d classes) to %s / %s\n", dataset.samples.size(),
                    dataset.class_count, synth_images_out.c_str(), synth_labels_out.c_str());
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cnnrec::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
