#include "doctest.h"

#include "fidres/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fidres;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* kValidConfig = R"({
  "family": "sts2",
  "axes": [
    {"name": "n_tot", "min": 0.5, "max": 1.5, "count": 11},
    {"name": "beta", "min": 0.8, "max": 1.0, "count": 11}
  ],
  "fixed": {"gamma": 0.5},
  "target": {"n_tot": 1.0, "beta": 1.0, "gamma": 0.5},
  "fidelity_band": {"f_min": 0.95, "f_max": 0.99},
  "windows": [{"observable": "total-photons", "rel_tol": 0.1}],
  "classifiers": ["separable"]
})";

}  // namespace

TEST_CASE("parse_scan_config: valid config round-trips into a runnable spec") {
    const ScanConfig cfg = parse_scan_config(kValidConfig);
    CHECK(cfg.spec.family == Family::Sts2);
    CHECK(cfg.spec.axes.size() == 2);
    CHECK(cfg.spec.fixed.at("gamma") == 0.5);
    CHECK(cfg.classifiers == std::vector<std::string>{"separable"});
    CHECK(grid_size(cfg.spec) == 121);
}

TEST_CASE("parse_scan_config: field-level rejections") {
    CHECK_THROWS_AS(parse_scan_config("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scan_config("{}"), std::invalid_argument);

    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string s = kValidConfig;
        const auto pos = s.find(from);
        REQUIRE(pos != std::string::npos);
        s.replace(pos, from.size(), to);
        return s;
    };

    // f_min > f_max
    CHECK_THROWS_AS(parse_scan_config(mutate("\"f_min\": 0.95", "\"f_min\": 0.999")),
                    std::invalid_argument);
    // unknown axis name
    CHECK_THROWS_AS(parse_scan_config(mutate("\"name\": \"beta\"", "\"name\": \"delta\"")),
                    std::invalid_argument);
    // unknown family
    CHECK_THROWS_AS(parse_scan_config(mutate("\"family\": \"sts2\"", "\"family\": \"sts9\"")),
                    std::invalid_argument);
    // bad window tolerance
    CHECK_THROWS_AS(parse_scan_config(mutate("\"rel_tol\": 0.1", "\"rel_tol\": 1.5")),
                    std::invalid_argument);
    // unknown classifier
    CHECK_THROWS_AS(parse_scan_config(mutate("\"classifiers\": [\"separable\"]",
                                             "\"classifiers\": [\"entangled\"]")),
                    std::invalid_argument);
    // unknown top-level field
    CHECK_THROWS_AS(parse_scan_config(mutate("\"fixed\"", "\"pinned\"")), std::invalid_argument);
    // unphysical target
    CHECK_THROWS_AS(parse_scan_config(mutate("\"target\": {\"n_tot\": 1.0",
                                             "\"target\": {\"n_tot\": -1.0")),
                    std::invalid_argument);
}

TEST_CASE("records_csv and summary_json are deterministic across runs and threads") {
    const ScanConfig cfg = parse_scan_config(kValidConfig);
    const ScanResult r1 = scan(cfg.spec, 1);
    const ScanResult r2 = scan(cfg.spec, 4);
    CHECK(records_csv(r1) == records_csv(r2));
    CHECK(summary_json(r1, summarize(r1, cfg.classifiers)) ==
          summary_json(r2, summarize(r2, cfg.classifiers)));

    const std::string csv = records_csv(r1);
    CHECK(csv.rfind("grid_index,n_tot,beta,gamma,fidelity,total_photons,dtilde_minus,discord,"
                    "physical,in_balloon,in_window,in_window_total-photons,separable\n",
                    0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
}

TEST_CASE("run_scan_to_dir writes records.csv and summary.json") {
    const auto dir = std::filesystem::temp_directory_path() / "fidres_test_scan";
    std::filesystem::remove_all(dir);
    const ScanConfig cfg = parse_scan_config(kValidConfig);
    const RegionSummary summary = run_scan_to_dir(cfg, dir, 2);
    CHECK(summary.total_points == 121);
    CHECK(std::filesystem::exists(dir / "records.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    const std::string json_text = slurp(dir / "summary.json");
    CHECK(json_text.find("\"family\": \"sts2\"") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("figure presets are defined for fig1..fig6") {
    const auto ids = figure_ids();
    REQUIRE(ids.size() == 6);
    for (const auto& id : ids) CHECK_FALSE(figure_scans(id).empty());
    CHECK_THROWS_AS(figure_scans("fig7"), std::invalid_argument);
}

TEST_CASE("scan config equal to a figure preset reproduces the preset output") {
    // fig5's TMSV-band scan, restated as a user config
    const auto& scans = figure_scans("fig5");
    const NamedScan* band = nullptr;
    for (const auto& ns : scans)
        if (ns.name == "tmsv_band") band = &ns;
    REQUIRE(band != nullptr);

    const auto dir_a = std::filesystem::temp_directory_path() / "fidres_preset_a";
    const auto dir_b = std::filesystem::temp_directory_path() / "fidres_preset_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    run_scan_to_dir(band->config, dir_a, 2);

    const std::string cfg_json = R"({
      "family": "sts2",
      "axes": [
        {"name": "n_tot", "min": 0.5, "max": 1.5, "count": 201},
        {"name": "beta", "min": 0.8, "max": 1.0, "count": 201}
      ],
      "fixed": {"gamma": 0.5},
      "target": {"n_tot": 1.0, "beta": 1.0, "gamma": 0.5},
      "fidelity_band": {"f_min": 0.95, "f_max": 0.99},
      "windows": [{"observable": "total-photons", "rel_tol": 0.1}],
      "classifiers": ["separable"]
    })";
    run_scan_to_dir(parse_scan_config(cfg_json), dir_b, 3);

    CHECK(slurp(dir_a / "records.csv") == slurp(dir_b / "records.csv"));
    CHECK(slurp(dir_a / "summary.json") == slurp(dir_b / "summary.json"));
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("run_figure fig1 meets its expectation and writes both scans") {
    const auto dir = std::filesystem::temp_directory_path() / "fidres_fig1";
    std::filesystem::remove_all(dir);
    const RunStatus status = run_figure("fig1", dir, 0);
    CHECK(status.expectation_met);
    CHECK(std::filesystem::exists(dir / "threshold" / "records.csv"));
    CHECK(std::filesystem::exists(dir / "threshold" / "summary.json"));
    CHECK(std::filesystem::exists(dir / "band" / "records.csv"));
    std::filesystem::remove_all(dir);
}
