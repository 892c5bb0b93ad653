#include "fidres/report.hpp"

#include "fidres/gaussian_single.hpp"
#include "fidres/gaussian_two.hpp"
#include "fidres/oracles.hpp"
#include "fidres/qubit.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

namespace fidres {

namespace {

using nlohmann::json;

std::string fmt12(double v) {
    if (std::isnan(v)) return "nan";
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string records_csv(const ScanResult& result) {
    std::string out;
    out.reserve(result.records.size() * 96 + 256);
    out += "grid_index";
    for (const auto& n : result.param_names) {
        out += ',';
        out += n;
    }
    out += ",fidelity";
    for (const auto& n : result.resource_names) {
        out += ',';
        out += n;
    }
    for (const auto& n : result.flag_names) {
        out += ',';
        out += n;
    }
    out += '\n';
    const size_t np = result.param_names.size();
    const size_t nr = result.resource_names.size();
    for (const ScanRecord& r : result.records) {
        out += std::to_string(r.grid_index);
        for (size_t i = 0; i < np; ++i) {
            out += ',';
            out += fmt12(r.params[i]);
        }
        out += ',';
        out += fmt12(r.fidelity);
        for (size_t i = 0; i < nr; ++i) {
            out += ',';
            out += fmt12(r.resources[i]);
        }
        for (size_t i = 0; i < result.flag_bits.size(); ++i) {
            out += ',';
            out += r.flag(result.flag_bits[i]) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

std::string summary_json(const ScanResult& result, const RegionSummary& summary) {
    json j;
    j["family"] = family_name(result.spec.family);
    j["fidelity_band"] = {{"f_min", result.spec.band.f_min}, {"f_max", result.spec.band.f_max}};
    j["counts"] = {{"total", summary.total_points},
                   {"physical", summary.physical_points},
                   {"balloon", summary.balloon_points},
                   {"window", summary.window_points}};

    json tparams = json::object();
    for (size_t i = 0; i < result.param_names.size(); ++i)
        tparams[result.param_names[i]] = result.spec.target[i];
    json tres = json::object();
    for (size_t i = 0; i < result.resource_names.size(); ++i)
        tres[result.resource_names[i]] = result.target_resources[i];
    j["target"] = {{"params", tparams}, {"resources", tres}};

    auto stats_block = [&](const std::map<std::string, ResourceStats>& stats) {
        json block = json::object();
        for (const auto& [name, st] : stats) {
            json o = {{"min", st.min}, {"max", st.max}, {"mean", st.mean}, {"count", st.count}};
            const auto it =
                std::find(result.resource_names.begin(), result.resource_names.end(), name);
            if (it != result.resource_names.end()) {
                const double t = result.target_resources[it - result.resource_names.begin()];
                if (std::isfinite(t) && t != 0.0) {
                    o["rel_min"] = st.min / t;
                    o["rel_max"] = st.max / t;
                }
            }
            block[name] = o;
        }
        return block;
    };
    j["resources"] = stats_block(summary.resources);
    j["resources_window"] = stats_block(summary.resources_window);

    auto class_block = [](const std::map<std::string, ClassCount>& counts) {
        json block = json::object();
        for (const auto& [name, cc] : counts)
            block[name] = {{"count_true", cc.count_true},
                           {"count_false", cc.count_false},
                           {"crosses_boundary", cc.crosses_boundary}};
        return block;
    };
    j["classifiers"] = class_block(summary.class_counts);
    j["classifiers_window"] = class_block(summary.class_counts_window);

    return j.dump(2) + "\n";
}

ScanConfig parse_scan_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        static const std::vector<std::string> known = {"family", "axes",    "fixed",      "target",
                                                       "fidelity_band",    "windows",    "classifiers"};
        for (const auto& [key, _] : j.items())
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw std::invalid_argument("config: unknown field '" + key + "'");

        ScanConfig cfg;
        if (!j.contains("family")) throw std::invalid_argument("config: missing field 'family'");
        cfg.spec.family = family_from_name(j.at("family").get<std::string>());

        if (!j.contains("axes") || !j.at("axes").is_array() || j.at("axes").empty())
            throw std::invalid_argument("config: 'axes' must be a non-empty array");
        for (const auto& a : j.at("axes")) {
            GridAxis ax;
            ax.name = a.at("name").get<std::string>();
            ax.min = a.at("min").get<double>();
            ax.max = a.at("max").get<double>();
            ax.count = a.at("count").get<int>();
            cfg.spec.axes.push_back(ax);
        }
        if (j.contains("fixed"))
            for (const auto& [key, val] : j.at("fixed").items())
                cfg.spec.fixed[key] = val.get<double>();

        if (!j.contains("target") || !j.at("target").is_object())
            throw std::invalid_argument("config: 'target' must be an object of parameter values");
        const auto& names = family_param_names(cfg.spec.family);
        if (j.at("target").size() != names.size())
            throw std::invalid_argument("config: 'target' must give exactly the family parameters");
        for (const auto& n : names) {
            if (!j.at("target").contains(n))
                throw std::invalid_argument("config: 'target' is missing parameter '" + n + "'");
            cfg.spec.target.push_back(j.at("target").at(n).get<double>());
        }

        if (!j.contains("fidelity_band"))
            throw std::invalid_argument("config: missing field 'fidelity_band'");
        cfg.spec.band.f_min = j.at("fidelity_band").at("f_min").get<double>();
        cfg.spec.band.f_max = j.at("fidelity_band").at("f_max").get<double>();
        if (!(cfg.spec.band.f_min <= cfg.spec.band.f_max))
            throw std::invalid_argument("config: fidelity_band needs f_min <= f_max");

        if (j.contains("windows"))
            for (const auto& w : j.at("windows")) {
                RelativeWindowConstraint rw;
                rw.observable = observable_from_name(w.at("observable").get<std::string>());
                rw.rel_tol = w.at("rel_tol").get<double>();
                cfg.spec.windows.push_back(rw);
            }

        if (j.contains("classifiers")) {
            const auto flags = family_flag_names(cfg.spec.family);
            for (const auto& c : j.at("classifiers")) {
                const std::string name = c.get<std::string>();
                if (std::find(flags.begin(), flags.end(), name) == flags.end())
                    throw std::invalid_argument("config: family '" + family_name(cfg.spec.family) +
                                                "' has no classifier flag '" + name + "'");
                cfg.classifiers.push_back(name);
            }
        }

        grid_size(cfg.spec);  // runs the full grid/target validation
        return cfg;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// figure presets

namespace {

ScanConfig make_config(Family family, std::vector<GridAxis> axes,
                       std::map<std::string, double> fixed, std::vector<double> target,
                       double f_min, double f_max, std::vector<RelativeWindowConstraint> windows,
                       std::vector<std::string> classifiers) {
    ScanConfig cfg;
    cfg.spec.family = family;
    cfg.spec.axes = std::move(axes);
    cfg.spec.fixed = std::move(fixed);
    cfg.spec.target = std::move(target);
    cfg.spec.band = {f_min, f_max};
    cfg.spec.windows = std::move(windows);
    cfg.classifiers = std::move(classifiers);
    return cfg;
}

const RelativeWindowConstraint kMeanWindow{WindowObservable::MeanPhotons, 0.1};
const RelativeWindowConstraint kVarWindow{WindowObservable::PhotonVariance, 0.1};
const RelativeWindowConstraint kTotalWindow{WindowObservable::TotalPhotons, 0.1};

std::map<std::string, std::vector<NamedScan>> build_figures() {
    std::map<std::string, std::vector<NamedScan>> figs;

    const std::vector<GridAxis> bloch41 = {{"rx", -1.0, 1.0, 41}, {"ry", -1.0, 1.0, 41}, {"rz", -1.0, 1.0, 41}};
    figs["fig1"] = {
        {"threshold", make_config(Family::BlochQubit, bloch41, {}, {0.0, 0.0, 1.0}, 0.9, 1.0, {}, {})},
        {"band", make_config(Family::BlochQubit, bloch41, {}, {0.0, 0.0, 1.0}, 0.9, 0.95, {}, {})},
    };

    const std::vector<GridAxis> pd41 = {{"c1", -1.0, 1.0, 41}, {"c2", -1.0, 1.0, 41}, {"c3", -1.0, 1.0, 41}};
    const std::vector<double> werner045 = {-0.45, -0.45, -0.45};
    const std::vector<double> pd_separable = {0.3, -0.3, 0.1};
    figs["fig2"] = {
        {"werner_f095",
         make_config(Family::PauliDiagonal, pd41, {}, werner045, 0.95, 1.0, {}, {"separable"})},
        {"werner_f099",
         make_config(Family::PauliDiagonal, pd41, {}, werner045, 0.99, 1.0, {}, {"separable"})},
        {"separable_f095",
         make_config(Family::PauliDiagonal, pd41, {}, pd_separable, 0.95, 1.0, {}, {"separable"})},
        {"separable_f099",
         make_config(Family::PauliDiagonal, pd41, {}, pd_separable, 0.99, 1.0, {}, {"separable"})},
        {"slice_c3",
         make_config(Family::PauliDiagonal, {{"c1", -1.0, 1.0, 201}, {"c2", -1.0, 1.0, 201}},
                     {{"c3", -0.45}}, werner045, 0.95, 1.0, {}, {"separable"})},
    };

    const std::vector<GridAxis> sts1_grid = {{"s", 0.3, 2.0, 201}, {"mu", 0.3, 1.0, 201}};
    figs["fig3"] = {
        {"thermal", make_config(Family::Sts1, sts1_grid, {}, {1.0, 0.9}, 0.99, 1.0,
                                {kMeanWindow, kVarWindow}, {"nonclassical"})},
        {"squeezed_low", make_config(Family::Sts1, sts1_grid, {}, {0.6, 0.7}, 0.99, 1.0,
                                     {kMeanWindow, kVarWindow}, {"nonclassical"})},
        {"squeezed_high", make_config(Family::Sts1, sts1_grid, {}, {1.6, 0.7}, 0.99, 1.0,
                                      {kMeanWindow, kVarWindow}, {"nonclassical"})},
    };

    const std::vector<GridAxis> disp41 = {
        {"mu", 0.3, 1.0, 41}, {"s", 0.3, 2.5, 41}, {"x", 0.0, 2.5, 41}};
    const std::vector<GridAxis> disp_slice = {{"s", 0.3, 2.5, 201}, {"x", 0.0, 2.5, 201}};
    figs["fig4"] = {
        {"sub", make_config(Family::DisplacedSts1, disp41, {}, {0.9, 1.4, 0.5}, 0.97, 1.0,
                            {kMeanWindow, kVarWindow}, {"nonclassical", "subpoissonian"})},
        {"super", make_config(Family::DisplacedSts1, disp41, {}, {0.7, 1.2, 1.5}, 0.97, 1.0,
                              {kMeanWindow, kVarWindow}, {"nonclassical", "subpoissonian"})},
        {"slice_sub", make_config(Family::DisplacedSts1, disp_slice, {{"mu", 0.8}}, {0.8, 1.5, 1.5},
                                  0.97, 1.0, {kMeanWindow, kVarWindow}, {"subpoissonian"})},
        {"slice_super", make_config(Family::DisplacedSts1, disp_slice, {{"mu", 0.8}}, {0.8, 1.0, 0.8},
                                    0.97, 1.0, {kMeanWindow, kVarWindow}, {"subpoissonian"})},
    };

    const std::vector<GridAxis> sts2_grid = {
        {"n_tot", 0.0, 5.0, 41}, {"beta", 0.0, 1.0, 41}, {"gamma", 0.0, 1.0, 41}};
    // balloon scans zoom into the targets' neighborhoods; the separability
    // surface sits within a few percent in beta, far below the full-box step
    figs["fig5"] = {
        {"landscape",
         make_config(Family::Sts2, sts2_grid, {}, {2.5, 0.2, 0.5}, 0.0, 1.0, {}, {"separable"})},
        {"entangled",
         make_config(Family::Sts2,
                     {{"n_tot", 1.5, 3.5, 41}, {"beta", 0.05, 0.35, 41}, {"gamma", 0.25, 0.75, 41}},
                     {}, {2.5, 0.2, 0.5}, 0.99, 1.0, {}, {"separable"})},
        {"separable",
         make_config(Family::Sts2,
                     {{"n_tot", 0.3, 2.0, 41}, {"beta", 0.0, 0.3, 41}, {"gamma", 0.25, 0.75, 41}},
                     {}, {1.0, 0.13, 0.5}, 0.99, 1.0, {}, {"separable"})},
        {"tmsv_band",
         make_config(Family::Sts2, {{"n_tot", 0.5, 1.5, 201}, {"beta", 0.8, 1.0, 201}},
                     {{"gamma", 0.5}}, {1.0, 1.0, 0.5}, 0.95, 0.99, {kTotalWindow}, {"separable"})},
    };

    figs["fig6"] = {
        {"entangled",
         make_config(Family::Sts2, sts2_grid, {}, {2.0, 0.2, 0.5}, 0.95, 1.0, {}, {"separable"})},
        {"tmsv_band",
         make_config(Family::Sts2, {{"n_tot", 1.0, 3.0, 201}, {"beta", 0.8, 1.0, 201}},
                     {{"gamma", 0.5}}, {2.0, 1.0, 0.5}, 0.95, 0.99, {kTotalWindow}, {"separable"})},
    };
    return figs;
}

const std::map<std::string, std::vector<NamedScan>>& figures() {
    static const std::map<std::string, std::vector<NamedScan>> figs = build_figures();
    return figs;
}

}  // namespace

std::vector<std::string> figure_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, _] : figures()) ids.push_back(id);
    return ids;
}

const std::vector<NamedScan>& figure_scans(const std::string& figure_id) {
    const auto it = figures().find(figure_id);
    if (it == figures().end())
        throw std::invalid_argument("unknown figure id '" + figure_id + "' (expected fig1..fig6)");
    return it->second;
}

RegionSummary run_scan_to_dir(const ScanConfig& config, const std::filesystem::path& dir,
                              int threads) {
    const ScanResult result = scan(config.spec, threads);
    const RegionSummary summary = summarize(result, config.classifiers);
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "records.csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / "records.csv").string());
        f << records_csv(result);
    }
    {
        std::ofstream f(dir / "summary.json", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
        f << summary_json(result, summary);
    }
    return summary;
}

// ---------------------------------------------------------------------------
// figure expectations

namespace {

struct ScanOutcome {
    ScanResult result;
    RegionSummary summary;
};

bool crosses(const ScanOutcome& o, const std::string& flag, bool windowed = false) {
    const auto& counts = windowed ? o.summary.class_counts_window : o.summary.class_counts;
    const auto it = counts.find(flag);
    return it != counts.end() && it->second.crosses_boundary;
}

std::string yesno(bool v) { return v ? "yes" : "no"; }

RunStatus check_figure(const std::string& id, const std::map<std::string, ScanOutcome>& out) {
    RunStatus status;
    auto note = [&](bool ok, const std::string& text) {
        status.expectation_met = status.expectation_met && ok;
        status.notes.push_back((ok ? "[ok]   " : "[FAIL] ") + text);
    };

    if (id == "fig1") {
        for (const char* scan_name : {"threshold", "band"}) {
            const ScanOutcome& o = out.at(scan_name);
            const double lo = 2.0 * o.result.spec.band.f_min - 1.0;  // F = (1+rz)/2
            const double hi = 2.0 * o.result.spec.band.f_max - 1.0;
            bool ok = true;
            for (const ScanRecord& r : o.result.records) {
                if (!r.flag(kFlagPhysical)) continue;
                const double rz = r.params[2];
                if (std::abs(rz - lo) <= 1e-9 || std::abs(rz - hi) <= 1e-9) continue;
                if (r.flag(kFlagInBalloon) != (rz >= lo && rz <= hi)) {
                    ok = false;
                    break;
                }
            }
            note(ok, std::string(scan_name) + ": fidelity region matches the spherical cap rz in [" +
                         fmt12(lo) + "," + fmt12(hi) + "]");
        }
    } else if (id == "fig2") {
        for (const char* scan_name : {"werner_f095", "werner_f099", "separable_f095", "separable_f099"}) {
            const bool ok = crosses(out.at(scan_name), "separable");
            note(ok, std::string(scan_name) + ": balloon crosses the separability border: " + yesno(ok));
        }
        const ScanOutcome& slice = out.at("slice_c3");
        const auto neg = slice.summary.resources.find("negativity");
        const auto dis = slice.summary.resources.find("discord");
        const bool ok = neg != slice.summary.resources.end() && neg->second.min <= 1e-12 &&
                        neg->second.max >= 0.15 && dis != slice.summary.resources.end() &&
                        dis->second.max > dis->second.min;
        note(ok, "slice_c3: balloon spans negativity 0 to >= 0.15 with a nonzero discord range");
    } else if (id == "fig3") {
        bool any_window = false;
        for (const char* scan_name : {"thermal", "squeezed_low", "squeezed_high"}) {
            const bool ok = crosses(out.at(scan_name), "nonclassical");
            any_window = any_window || crosses(out.at(scan_name), "nonclassical", true);
            note(ok, std::string(scan_name) + ": balloon overlaps classical and nonclassical: " + yesno(ok));
        }
        note(any_window, "photon windows still mix classical and nonclassical for some target: " +
                             yesno(any_window));
    } else if (id == "fig4") {
        for (const char* scan_name : {"sub", "super"}) {
            const bool plain = crosses(out.at(scan_name), "subpoissonian");
            note(plain, std::string(scan_name) + ": balloon crosses the Poissonian border: " + yesno(plain));
            // the windowed subset can be thinner than the grid step; the
            // acceptance suite resolves it by hierarchical refinement
            status.notes.push_back("[info] " + std::string(scan_name) + ": windowed subset crossing on this grid: " +
                                   yesno(crosses(out.at(scan_name), "subpoissonian", true)));
        }
        for (const char* scan_name : {"slice_sub", "slice_super"}) {
            const bool ok = crosses(out.at(scan_name), "subpoissonian");
            note(ok, std::string(scan_name) + ": slice balloon crosses the Poissonian border: " + yesno(ok));
        }
    } else if (id == "fig5") {
        for (const char* scan_name : {"entangled", "separable"}) {
            const bool ok = crosses(out.at(scan_name), "separable");
            note(ok, std::string(scan_name) + ": balloon crosses the separability border: " + yesno(ok));
        }
        const ScanOutcome& band = out.at("tmsv_band");
        bool has_low_beta = false;
        for (const ScanRecord& r : band.result.records)
            if (r.flag(kFlagPhysical) && r.flag(kFlagInBalloon) && r.flag(kFlagInWindow) &&
                r.params[1] < 1.0 - 1e-9) {
                has_low_beta = true;
                break;
            }
        note(band.summary.window_points > 0, "tmsv_band: photon-window subset is non-empty");
        note(has_low_beta, "tmsv_band: windowed subset reaches below maximal squeezing");
    } else if (id == "fig6") {
        const ScanOutcome& ent = out.at("entangled");
        const double target_discord = ent.result.target_resources[2];
        note(std::abs(target_discord - 0.22) <= 0.01,
             "entangled: target discord " + fmt12(target_discord) + " within 0.22 +- 0.01");
        const auto dis = ent.summary.resources.find("discord");
        bool ok = dis != ent.summary.resources.end();
        double rel_min = 0.0, rel_max = 0.0;
        if (ok) {
            rel_min = dis->second.min / target_discord;
            rel_max = dis->second.max / target_discord;
            ok = std::abs(rel_min - 0.38) <= 0.05 && std::abs(rel_max - 1.88) <= 0.05;
        }
        note(ok, "entangled: relative discord range (" + fmt12(rel_min) + "," + fmt12(rel_max) +
                     ") within (0.38,1.88) +- 0.05");
        note(crosses(ent, "separable"), "entangled: balloon crosses the separability border");
        note(out.at("tmsv_band").summary.window_points > 0, "tmsv_band: photon-window subset is non-empty");
    }
    return status;
}

}  // namespace

RunStatus run_figure(const std::string& figure_id, const std::filesystem::path& outdir,
                     int threads) {
    const auto& scans = figure_scans(figure_id);
    std::map<std::string, ScanOutcome> outcomes;
    for (const NamedScan& ns : scans) {
        ScanOutcome o;
        o.result = scan(ns.config.spec, threads);
        o.summary = summarize(o.result, ns.config.classifiers);
        const std::filesystem::path dir = outdir / ns.name;
        std::filesystem::create_directories(dir);
        {
            std::ofstream f(dir / "records.csv", std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + (dir / "records.csv").string());
            f << records_csv(o.result);
        }
        {
            std::ofstream f(dir / "summary.json", std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
            f << summary_json(o.result, o.summary);
        }
        outcomes.emplace(ns.name, std::move(o));
    }
    return check_figure(figure_id, outcomes);
}

// ---------------------------------------------------------------------------
// selftest

namespace {

PauliDiagonalCoeffs random_pd(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const PauliDiagonalCoeffs c{u(rng), u(rng), u(rng)};
        if (is_physical_pd(c)) return c;
    }
}

CMatrix random_density(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix a(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = cdouble(g(rng), g(rng));
    CMatrix rho = mul(a, a.adjoint());
    const double tr = rho.trace().real();
    for (auto& v : rho.data()) v /= tr;
    return rho;
}

}  // namespace

bool selftest(std::ostream& log, int threads) {
    bool all_ok = true;
    auto suite = [&](const std::string& name, bool ok, const std::string& detail) {
        all_ok = all_ok && ok;
        log << (ok ? "[ok]   " : "[FAIL] ") << name << (detail.empty() ? "" : ": " + detail) << "\n";
    };

    {
        std::mt19937_64 rng(1001);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto a = random_pd(rng), b = random_pd(rng);
            const double closed = pd_fidelity(a, b);
            const double matrix =
                uhlmann_fidelity(pd_to_density_matrix(a), pd_to_density_matrix(b));
            worst = std::max(worst, std::abs(closed - matrix));
        }
        suite("pauli-diagonal fidelity vs matrix fidelity", worst <= 1e-10,
              "max deviation " + fmt12(worst));
    }
    {
        std::mt19937_64 rng(1002);
        bool ok = true;
        for (int i = 0; i < 200 && ok; ++i) {
            const CMatrix r1 = i % 2 ? random_density(rng, 4) : pd_to_density_matrix(random_pd(rng));
            const CMatrix r2 = i % 2 ? random_density(rng, 4) : pd_to_density_matrix(random_pd(rng));
            const double f = uhlmann_fidelity(r1, r2);
            const double td = trace_distance(r1, r2);
            ok = 1.0 - std::sqrt(f) <= td + 1e-12 && td <= std::sqrt(1.0 - f) + 1e-12;
        }
        suite("trace-distance bounds from fidelity", ok, "");
    }
    {
        std::mt19937_64 rng(1003);
        double worst = 0.0;
        for (int i = 0; i < 6; ++i) {
            const auto c = random_pd(rng);
            worst = std::max(worst,
                             std::abs(pd_discord(c) - oracles::pd_discord_measurement(c)));
        }
        suite("discord closed form vs measurement search", worst <= 1e-6,
              "max deviation " + fmt12(worst));
    }
    {
        std::mt19937_64 rng(1004);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto c = random_pd(rng);
            worst = std::max(worst,
                             std::abs(negativity(c) - oracles::negativity_partial_transpose(c)));
        }
        suite("negativity vs explicit partial transpose", worst <= 1e-10,
              "max deviation " + fmt12(worst));
    }
    {
        std::mt19937_64 rng(1005);
        std::uniform_real_distribution<double> us(0.4, 2.5), umu(0.3, 1.0), ux(0.0, 2.0);
        double worst_f = 0.0, worst_m = 0.0;
        for (int i = 0; i < 12; ++i) {
            const SingleModeGaussian g1 = displaced_sts1({us(rng), umu(rng)}, ux(rng));
            const SingleModeGaussian g2 = displaced_sts1({us(rng), umu(rng)}, ux(rng));
            worst_f = std::max(worst_f,
                               std::abs(fidelity_gaussian1(g1, g2) - oracles::fock_fidelity(g1, g2)));
            const PhotonStatistics a = photon_stats(g1);
            const PhotonStatistics b = oracles::fock_photon_stats(g1);
            worst_m = std::max({worst_m, std::abs(a.mean_n - b.mean_n), std::abs(a.var_n - b.var_n)});
        }
        suite("single-mode closed forms vs Fock oracle", worst_f <= 1e-6 && worst_m <= 1e-6,
              "fidelity " + fmt12(worst_f) + ", moments " + fmt12(worst_m));
    }
    {
        // coherent-state identities pin the quadrature convention
        const SingleModeGaussian c1 = displaced_sts1({1.0, 1.0}, 0.7);
        const SingleModeGaussian c2 = displaced_sts1({1.0, 1.0}, 1.3);
        const double f = fidelity_gaussian1(c1, c2);
        const double expect = std::exp(-0.36);  // |x1-x2|^2
        const PhotonStatistics st = photon_stats(c2);
        const bool ok = std::abs(f - expect) <= 1e-9 && std::abs(st.mean_n - 1.69) <= 1e-9 &&
                        std::abs(st.fano - 1.0) <= 1e-9;
        suite("coherent-state identities", ok, "");
    }
    {
        std::mt19937_64 rng(1006);
        std::uniform_real_distribution<double> un(0.05, 3.0);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double n1a = un(rng), n2a = un(rng), n1b = un(rng), n2b = un(rng);
            const double na = n1a + n2a, nb = n1b + n2b;
            const STS2Params pa{na, 0.0, n1a / na};
            const STS2Params pb{nb, 0.0, n1b / nb};
            const double two_mode = fidelity_sts2(pa, pb);
            const double per_mode =
                fidelity_sts1({1.0, 1.0 / (2.0 * n1a + 1.0)}, {1.0, 1.0 / (2.0 * n1b + 1.0)}) *
                fidelity_sts1({1.0, 1.0 / (2.0 * n2a + 1.0)}, {1.0, 1.0 / (2.0 * n2b + 1.0)});
            worst = std::max(worst, std::abs(two_mode - per_mode));
            worst = std::max(worst, std::abs(two_mode - oracles::thermal_product_fidelity(
                                                             n1a, n2a, n1b, n2b)));
        }
        suite("two-mode thermal fidelity factorization", worst <= 1e-8, "max deviation " + fmt12(worst));
    }
    {
        const double f1 = fidelity_sts2({1.0, 1.0, 0.5}, {1.05, 1.0, 0.5});
        const double o1 = oracles::tmsv_fock_fidelity(1.0, 1.05);
        const double f2 = fidelity_sts2({2.0, 1.0, 0.5}, {2.2, 1.0, 0.5});
        const double o2 = oracles::tmsv_fock_fidelity(2.0, 2.2);
        const bool ok = std::abs(f1 - o1) <= 1e-5 && std::abs(f2 - o2) <= 1e-5;
        suite("two-mode squeezed-vacuum fidelity vs pair-basis oracle", ok,
              fmt12(std::abs(f1 - o1)) + ", " + fmt12(std::abs(f2 - o2)));
    }
    {
        std::mt19937_64 rng(1007);
        std::uniform_real_distribution<double> un(0.0, 5.0), ub(0.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const STS2Params p{un(rng), ub(rng), ub(rng)};
            const CMCoeffs m = sts2_coeffs(p);
            const SymplecticSpectrum sp = symplectic_spectrum(m);
            const auto d = oracles::symplectic_eigenvalues(sts2_cm(m));
            const auto dt = oracles::symplectic_eigenvalues_pt(sts2_cm(m));
            worst = std::max({worst, std::abs(sp.d_minus - d[0]), std::abs(sp.d_plus - d[1]),
                              std::abs(sp.dt_minus - dt[0]), std::abs(sp.dt_plus - dt[1])});
        }
        suite("symplectic spectrum vs Hermitian oracle", worst <= 1e-9, "max deviation " + fmt12(worst));
    }
    {
        // emitted records re-validate against the family modules
        ScanConfig cfg = make_config(Family::PauliDiagonal,
                                     {{"c1", -1.0, 1.0, 11}, {"c2", -1.0, 1.0, 11}, {"c3", -1.0, 1.0, 11}},
                                     {}, {-0.45, -0.45, -0.45}, 0.9, 1.0, {}, {"separable"});
        const ScanResult result = scan(cfg.spec, threads);
        bool ok = true;
        std::mt19937_64 rng(1008);
        std::uniform_int_distribution<size_t> pick(0, result.records.size() - 1);
        for (int i = 0; i < 100 && ok; ++i) {
            const ScanRecord& r = result.records[pick(rng)];
            const ScanRecord re = evaluate_point(
                cfg.spec, std::vector<double>(r.params.begin(), r.params.begin() + 3), r.grid_index);
            ok = re.flags == r.flags &&
                 (std::isnan(re.fidelity) ? std::isnan(r.fidelity) : re.fidelity == r.fidelity);
            for (size_t k = 0; k < result.resource_names.size() && ok; ++k)
                ok = std::isnan(re.resources[k]) ? std::isnan(r.resources[k])
                                                 : re.resources[k] == r.resources[k];
        }
        suite("scan records re-validate against family modules", ok, "");
    }
    return all_ok;
}

}  // namespace fidres
