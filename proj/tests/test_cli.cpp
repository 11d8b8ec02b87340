#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cnnrec/matcher.hpp"
#include "cnnrec/report_io.hpp"
#include "test_util.hpp"

using nlohmann::json;
using testutil::TempDir;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args, const TempDir& dir) {
    const std::string log = dir.file("cli_output.log");
    const std::string command =
        std::string(CNNREC_CLI_PATH) + " " + args + " > " + log + " 2>&1";
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::ostringstream out;
    out << in.rdbuf();
    result.output = out.str();
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("synth writes an IDX pair that complexity can score") {
    TempDir dir;
    const CliResult synth = run_cli("synth --classes 3 --per-class 5 --side 16 --seed 4"
                                    " --out-images " + dir.file("img") +
                                    " --out-labels " + dir.file("lbl"), dir);
    REQUIRE(synth.exit_code == 0);

    const CliResult complexity = run_cli(
        "complexity --format idx --images " + dir.file("img") + " --labels " +
            dir.file("lbl") + " --out " + dir.file("report.json"), dir);
    REQUIRE(complexity.exit_code == 0);
    CHECK(complexity.output.find("c_all = 0.") != std::string::npos);

    const json report = json::parse(slurp(dir.file("report.json")));
    CHECK(report["l"] == 15);
    CHECK(report["class_count"] == 3);
    CHECK(report["per_sample"].size() == 15);
    CHECK(report.contains("c_all"));
    CHECK(report.contains("descriptor_variant"));
    CHECK(report["config"]["command"] == "complexity");
    CHECK(report.contains("version"));
}

TEST_CASE("repeating the same complexity invocation is byte-identical") {
    TempDir dir;
    const std::string command = "complexity --format synth --classes 4 --per-class 10"
                                " --side 16 --noise 0.2 --seed 11 --out " +
                                dir.file("report.json");
    REQUIRE(run_cli(command, dir).exit_code == 0);
    const std::string first = slurp(dir.file("report.json"));
    CHECK(!first.empty());
    REQUIRE(run_cli(command, dir).exit_code == 0);
    CHECK(first == slurp(dir.file("report.json")));
}

TEST_CASE("missing input file exits with status 2 and names the path") {
    TempDir dir;
    const CliResult result = run_cli(
        "complexity --format idx --images " + dir.file("absent") + " --labels " +
            dir.file("absent2") + " --out " + dir.file("r.json"), dir);
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("absent") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2") {
    TempDir dir;
    const CliResult result = run_cli("complexity --no-such-flag", dir);
    CHECK(result.exit_code == 2);
    const CliResult unknown = run_cli("frobnicate", dir);
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("gen-model emits a spec that ability can score") {
    TempDir dir;
    const CliResult gen = run_cli(
        "gen-model -S 64 -M 4 --q 2,2,2,2 --out " + dir.file("spec.json") +
            " --layers-csv " + dir.file("layers.csv"), dir);
    REQUIRE(gen.exit_code == 0);
    CHECK(gen.output.find("n_conv=8") != std::string::npos);
    CHECK(slurp(dir.file("layers.csv")).rfind("kind,", 0) == 0);

    const CliResult ability = run_cli("ability --spec " + dir.file("spec.json"), dir);
    REQUIRE(ability.exit_code == 0);
    CHECK(ability.output.find("chi = ") != std::string::npos);
}

TEST_CASE("calibrate writes the params schema") {
    TempDir dir;
    const CliResult result = run_cli("calibrate --out " + dir.file("params.json"), dir);
    REQUIRE(result.exit_code == 0);
    const json params = json::parse(slurp(dir.file("params.json")));
    for (const char* field : {"a0", "a1", "n0", "gamma", "provenance", "assumptions",
                              "residuals"}) {
        CHECK(params.contains(field));
    }
    CHECK(params["provenance"] == "fitted");
    CHECK(params["residuals"].size() == 6);
}

TEST_CASE("calibrate accepts the shipped anchor fixture and its params work downstream") {
    TempDir dir;
    const CliResult result = run_cli(
        "calibrate --anchors " + std::string(CNNREC_DATA_DIR) + "/table1_anchors.json"
        " --out " + dir.file("params.json"), dir);
    REQUIRE(result.exit_code == 0);

    std::ofstream pairs(dir.file("pairs.jsonl"));
    pairs << R"({"task": "hard", "c_all": 0.55, "chi_optimal": 6.3})" << "\n"
          << R"({"task": "easy", "c_all": 0.9, "chi_optimal": 5.5})" << "\n";
    pairs.close();
    const CliResult rec = run_cli(
        "recommend --c-all 0.8 --params " + dir.file("params.json") + " --calibration " +
            dir.file("pairs.jsonl") + " --out " + dir.file("rec.json"), dir);
    REQUIRE(rec.exit_code == 0);
    const json recommendation = json::parse(slurp(dir.file("rec.json")));
    CHECK(recommendation.contains("chosen_spec"));
    CHECK(recommendation.contains("target_chi"));
    CHECK(recommendation.contains("undershoot"));
    CHECK(recommendation["candidates"].size() > 0);
    CHECK(recommendation["chosen_chi"].get<double>() >=
          recommendation["target_chi"].get<double>());
}

TEST_CASE("recommend honors the margin monotonically") {
    TempDir dir;
    std::ofstream pairs(dir.file("pairs.jsonl"));
    pairs << R"({"task": "hard", "c_all": 0.55, "chi_optimal": 6.3})" << "\n"
          << R"({"task": "easy", "c_all": 0.9, "chi_optimal": 5.4})" << "\n";
    pairs.close();

    const auto run_margin = [&](const std::string& margin, const std::string& out) {
        const CliResult result = run_cli(
            "recommend --c-all 0.7 --calibration " + dir.file("pairs.jsonl") +
                " --margin " + margin + " --out " + dir.file(out), dir);
        REQUIRE(result.exit_code == 0);
        return json::parse(slurp(dir.file(out)))["chosen_chi"].get<double>();
    };
    const double low = run_margin("0", "rec0.json");
    const double high = run_margin("0.2", "rec2.json");
    CHECK(high >= low);
}

TEST_CASE("curve CSV rows match pointwise predictions and ignore anchor order") {
    TempDir dir;
    const CliResult a = run_cli("curve --anchor 1.0,0.9 --anchor 4.0,0.95 --points 50 --out " +
                                    dir.file("a.csv"), dir);
    REQUIRE(a.exit_code == 0);
    const std::string forward = slurp(dir.file("a.csv"));
    const CliResult b = run_cli("curve --anchor 4.0,0.95 --anchor 1.0,0.9 --points 50 --out " +
                                    dir.file("a.csv"), dir);
    REQUIRE(b.exit_code == 0);
    CHECK(forward == slurp(dir.file("a.csv")));

    const cnnrec::PerformanceCurve curve =
        cnnrec::fit_performance_curve({1.0, 0.9}, {4.0, 0.95});
    std::istringstream csv(slurp(dir.file("a.csv")));
    std::string line;
    std::getline(csv, line);  // config comment
    std::getline(csv, line);  // header
    CHECK(line == "t,predicted_rate,anchor");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double t = std::stod(line.substr(0, c1));
        const double rate = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const bool anchor = line.substr(c2 + 1) == "1";
        if (anchor) {
            CHECK((std::abs(t - 1.0) < 1e-9 || std::abs(t - 4.0) < 1e-9));
        }
        CHECK(rate == doctest::Approx(cnnrec::predict_rate(curve, t)).epsilon(1e-6));
    }
    CHECK(rows == 52);  // 50 grid points + 2 anchors
}

TEST_CASE("curve rejects identical anchor times") {
    TempDir dir;
    const CliResult result =
        run_cli("curve --anchor 1.0,0.9 --anchor 1.0,0.95 --out " + dir.file("c.csv"), dir);
    CHECK(result.exit_code == 2);
}

TEST_CASE("validate-2class is reproducible and enforces the trial floor") {
    TempDir dir;
    const std::string command =
        "validate-2class --max-classes 3 --trials 10000 --seed 5 --out " + dir.file("s.json");
    REQUIRE(run_cli(command, dir).exit_code == 0);
    const std::string first = slurp(dir.file("s.json"));
    REQUIRE(run_cli(command, dir).exit_code == 0);
    CHECK(first == slurp(dir.file("s.json")));

    const CliResult tiny = run_cli(
        "validate-2class --trials 500 --out " + dir.file("s3.json"), dir);
    CHECK(tiny.exit_code == 2);
}
