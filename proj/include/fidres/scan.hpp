#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace fidres {

enum class Family { BlochQubit, PauliDiagonal, Sts1, DisplacedSts1, Sts2 };

Family family_from_name(const std::string& name);
const std::string& family_name(Family f);
const std::vector<std::string>& family_param_names(Family f);
std::vector<std::string> family_resource_names(Family f);
std::vector<std::string> family_flag_names(Family f);

enum class WindowObservable { MeanPhotons, PhotonVariance, TotalPhotons };

WindowObservable observable_from_name(const std::string& name);
const std::string& observable_name(WindowObservable o);

struct GridAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 0;  // >= 2, or 1 with min == max (pinned axis)
};

struct FidelityBand {
    double f_min = 0.0;
    double f_max = 1.0;
};

struct RelativeWindowConstraint {
    WindowObservable observable = WindowObservable::MeanPhotons;
    double rel_tol = 0.1;  // in (0,1), multiplicative around the target value
};

inline constexpr int kMaxParams = 3;
inline constexpr int kMaxResources = 4;
inline constexpr int kMaxWindows = 3;

// flag bit layout, fixed across families
inline constexpr int kFlagPhysical = 0;
inline constexpr int kFlagInBalloon = 1;
inline constexpr int kFlagInWindow = 2;  // all windows combined
inline constexpr int kFlagWindowBase = 3;
inline constexpr int kFlagFamilyBase = kFlagWindowBase + kMaxWindows;

struct ScanRecord {
    std::uint64_t grid_index = 0;
    std::array<double, kMaxParams> params{};  // canonical family order
    double fidelity = 0.0;
    std::array<double, kMaxResources> resources{};
    std::uint32_t flags = 0;

    bool flag(int bit) const { return (flags >> bit) & 1u; }
};

struct ScanSpec {
    Family family = Family::PauliDiagonal;
    std::vector<GridAxis> axes;             // row-major grid order
    std::map<std::string, double> fixed;    // pinned parameters (axes + fixed = family params)
    std::vector<double> target;             // canonical family order
    FidelityBand band;
    std::vector<RelativeWindowConstraint> windows;
};

struct ScanResult {
    ScanSpec spec;
    std::vector<std::string> param_names;
    std::vector<std::string> resource_names;
    std::vector<std::string> flag_names;  // parallel to flag_bits
    std::vector<int> flag_bits;
    std::vector<double> target_resources;  // resource values at the target
    std::vector<ScanRecord> records;       // sorted by grid_index
};

std::uint64_t grid_size(const ScanSpec& spec);
std::vector<double> grid_params(const ScanSpec& spec, std::uint64_t index);

/// Exhaustive grid evaluation; one record per grid point in row-major axis
/// order, deterministic contents for any thread count. threads <= 0 uses the
/// machine parallelism.
ScanResult scan(const ScanSpec& spec, int threads = 0);

/// Streaming variant for grids too large to materialize: visit is called in
/// grid order. Evaluation still runs in parallel block-wise.
void scan_visit(const ScanSpec& spec, int threads,
                const std::function<void(const ScanRecord&)>& visit);

/// Evaluate a single off-grid parameter point under the same spec.
ScanRecord evaluate_point(const ScanSpec& spec, const std::vector<double>& params,
                          std::uint64_t grid_index = 0);

struct ResourceStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    std::uint64_t count = 0;  // values aggregated (NaN entries skipped)
};

struct ClassCount {
    std::uint64_t count_true = 0;
    std::uint64_t count_false = 0;
    bool crosses_boundary = false;
};

struct RegionSummary {
    std::uint64_t total_points = 0;
    std::uint64_t physical_points = 0;
    std::uint64_t balloon_points = 0;  // physical and inside the fidelity band
    std::uint64_t window_points = 0;   // balloon and inside all windows
    std::map<std::string, ResourceStats> resources;         // over the balloon
    std::map<std::string, ResourceStats> resources_window;  // over balloon && window
    std::map<std::string, ClassCount> class_counts;
    std::map<std::string, ClassCount> class_counts_window;
};

/// Aggregate balloon statistics; classifiers name family flags to report
/// class counts / boundary crossings for.
RegionSummary summarize(const ScanResult& result, const std::vector<std::string>& classifiers);

/// Bisect along grid edges whose endpoints are both physical and in-balloon
/// but classified differently, down to the given parameter resolution.
/// Returns straddling point pairs flattened (low, high, low, high, ...);
/// empty when the grid shows no crossing.
std::vector<ScanRecord> refine_boundary(const ScanResult& result, const std::string& classifier,
                                        double resolution = 1e-4);

}  // namespace fidres
