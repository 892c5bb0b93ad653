#pragma once

#include "fidres/scan.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fidres {

struct ScanConfig {
    ScanSpec spec;
    std::vector<std::string> classifiers;
};

/// Parse and validate a JSON scan configuration. Throws std::invalid_argument
/// with a field-level message on malformed input.
ScanConfig parse_scan_config(const std::string& json_text);

/// Deterministic CSV serialization: header row naming grid index, parameters,
/// fidelity, resources and flags; floats at 12 significant digits, '.'
/// decimal separator, LF line endings.
std::string records_csv(const ScanResult& result);

/// Deterministic JSON serialization of a region summary (keys sorted).
std::string summary_json(const ScanResult& result, const RegionSummary& summary);

struct NamedScan {
    std::string name;
    ScanConfig config;
};

std::vector<std::string> figure_ids();

/// Preconfigured scans reproducing the built-in demonstration figures.
const std::vector<NamedScan>& figure_scans(const std::string& figure_id);

struct RunStatus {
    bool expectation_met = true;
    std::vector<std::string> notes;
};

/// Run one configured scan and write records.csv + summary.json into dir.
RegionSummary run_scan_to_dir(const ScanConfig& config, const std::filesystem::path& dir,
                              int threads);

/// Run every scan of a figure preset into outdir/<scan-name>/ and check the
/// figure's scientific expectation.
RunStatus run_figure(const std::string& figure_id, const std::filesystem::path& outdir,
                     int threads);

/// Oracle-equivalence self-test; one line per suite.
bool selftest(std::ostream& log, int threads = 0);

}  // namespace fidres
