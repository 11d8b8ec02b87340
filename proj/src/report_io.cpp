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

#include "cnnrec/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cnnrec/errors.hpp"

namespace cnnrec {

namespace {

using nlohmann::json;

} // namespace

double round6(double value) {
    return std::round(value * 1e6) / 1e6;
}

std::string complexity_report_to_json(const ComplexityReport& report) {
    json doc;
    doc["dataset"] = report.dataset_name;
    doc["l"] = report.sample_count;
    doc["class_count"] = report.class_count;
    doc["c_all"] = round6(report.c_all);
    doc["per_class_mean_c"] = json::array();
    for (double v : report.per_class_mean_c) {
        doc["per_class_mean_c"].push_back(round6(v));
    }
    doc["per_sample"] = json::array();
    for (const auto& entry : report.per_sample) {
        doc["per_sample"].push_back({{"id", entry.sample_id},
                                     {"class", entry.class_id},
                                     {"c", entry.complexity},
                                     {"rival", entry.best_rival},
                                     {"correct", entry.centroid_correct}});
    }
    doc["descriptor_variant"] = report.descriptor_variant;
    return doc.dump(2) + "\n";
}

ComplexityReport complexity_report_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("report JSON: ") + e.what());
    }
    ComplexityReport report;
    report.dataset_name = doc.at("dataset").get<std::string>();
    report.sample_count = doc.at("l").get<std::size_t>();
    report.class_count = doc.at("class_count").get<int>();
    report.c_all = doc.at("c_all").get<double>();
    report.per_class_mean_c = doc.at("per_class_mean_c").get<std::vector<double>>();
    for (const auto& entry : doc.at("per_sample")) {
        report.per_sample.push_back({entry.at("id").get<int>(), entry.at("class").get<int>(),
                                     entry.at("c").get<double>(), entry.at("rival").get<int>(),
                                     entry.at("correct").get<bool>()});
    }
    report.descriptor_variant = doc.value("descriptor_variant", std::string{});
    return report;
}

std::string descriptors_to_csv(std::span<const FeatureVector> features,
                               std::span<const int> labels) {
    if (features.size() != labels.size()) {
        throw std::invalid_argument("feature/label count mismatch");
    }
    std::ostringstream out;
    out << "sample_id,class_id";
    for (int d = 0; d < kDescriptorSize; ++d) {
        out << ",v" << d;
    }
    out << '\n';
    char buffer[32];
    for (std::size_t i = 0; i < features.size(); ++i) {
        out << features[i].source_id << ',' << labels[i];
        for (double v : features[i].values) {
            std::snprintf(buffer, sizeof(buffer), ",%.9g", v);
            out << buffer;
        }
        out << '\n';
    }
    return out.str();
}

std::string simulation_report_to_json(const SimulationReport& report) {
    json doc;
    doc["separation"] = report.center_separation;
    doc["sigma"] = report.sigma;
    doc["trials_per_class"] = report.trials_per_class;
    doc["seed"] = report.seed;
    doc["rows"] = json::array();
    for (const auto& row : report.rows) {
        doc["rows"].push_back({{"classes", row.class_count},
                               {"error_rate", row.error_rate},
                               {"ratio_to_two_class", row.ratio_to_two_class}});
    }
    return doc.dump(2) + "\n";
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw parse_error(temp.string(), 0, "cannot open file for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw parse_error(temp.string(), 0, "write failed");
        }
    }
    fs::rename(temp, target);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error(path, 0, "cannot open file");
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace cnnrec
