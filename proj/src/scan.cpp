#include "fidres/scan.hpp"

#include "fidres/gaussian_single.hpp"
#include "fidres/gaussian_two.hpp"
#include "fidres/qubit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <stdexcept>
#include <thread>

namespace fidres {

namespace {

const std::vector<std::string> kFamilyNames = {"bloch-qubit", "pauli-diagonal", "sts1",
                                               "displaced-sts1", "sts2"};

const std::vector<std::vector<std::string>> kParamNames = {
    {"rx", "ry", "rz"}, {"c1", "c2", "c3"}, {"s", "mu"}, {"mu", "s", "x"}, {"n_tot", "beta", "gamma"}};

const std::vector<std::string> kObservableNames = {"mean-photons", "photon-variance", "total-photons"};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSepTol = 1e-12;

}  // namespace

Family family_from_name(const std::string& name) {
    for (size_t i = 0; i < kFamilyNames.size(); ++i)
        if (kFamilyNames[i] == name) return static_cast<Family>(i);
    throw std::invalid_argument("unknown state family '" + name + "'");
}

const std::string& family_name(Family f) { return kFamilyNames[static_cast<size_t>(f)]; }

const std::vector<std::string>& family_param_names(Family f) {
    return kParamNames[static_cast<size_t>(f)];
}

WindowObservable observable_from_name(const std::string& name) {
    for (size_t i = 0; i < kObservableNames.size(); ++i)
        if (kObservableNames[i] == name) return static_cast<WindowObservable>(i);
    throw std::invalid_argument("unknown window observable '" + name + "'");
}

const std::string& observable_name(WindowObservable o) {
    return kObservableNames[static_cast<size_t>(o)];
}

namespace {

// ---------------------------------------------------------------------------
// family evaluators

class FamilyEvaluator {
  public:
    virtual ~FamilyEvaluator() = default;
    virtual int n_params() const = 0;
    virtual const std::vector<std::string>& resource_names() const = 0;
    virtual const std::vector<std::string>& flag_names() const = 0;
    virtual bool physical(const double* p) const = 0;
    /// fidelity to the target; p must be physical
    virtual double fidelity(const double* p) const = 0;
    /// resource values and family flag bits (bit 0 = first family flag)
    virtual void resources_flags(const double* p, double* res, std::uint32_t& fam) const = 0;
    virtual bool supports(WindowObservable) const { return false; }
    virtual double observable(WindowObservable, const double*) const { return kNaN; }
};

const std::vector<std::string> kNoNames;

class BlochEvaluator final : public FamilyEvaluator {
  public:
    explicit BlochEvaluator(const std::vector<double>& t) : target_{t[0], t[1], t[2]} {}
    int n_params() const override { return 3; }
    const std::vector<std::string>& resource_names() const override { return kNoNames; }
    const std::vector<std::string>& flag_names() const override { return kNoNames; }
    bool physical(const double* p) const override {
        return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= 1.0 + 1e-12;
    }
    double fidelity(const double* p) const override {
        return bloch_fidelity(target_, {p[0], p[1], p[2]});
    }
    void resources_flags(const double*, double*, std::uint32_t& fam) const override { fam = 0; }

  private:
    BlochVector target_;
};

class PdEvaluator final : public FamilyEvaluator {
  public:
    explicit PdEvaluator(const std::vector<double>& t) : target_{t[0], t[1], t[2]} {}
    int n_params() const override { return 3; }
    const std::vector<std::string>& resource_names() const override {
        static const std::vector<std::string> names = {"negativity", "discord"};
        return names;
    }
    const std::vector<std::string>& flag_names() const override {
        static const std::vector<std::string> names = {"separable"};
        return names;
    }
    bool physical(const double* p) const override { return is_physical_pd({p[0], p[1], p[2]}); }
    double fidelity(const double* p) const override {
        return pd_fidelity(target_, {p[0], p[1], p[2]});
    }
    void resources_flags(const double* p, double* res, std::uint32_t& fam) const override {
        const PauliDiagonalCoeffs c{p[0], p[1], p[2]};
        const double neg = negativity(c);
        res[0] = neg;
        res[1] = pd_discord(c);
        fam = neg <= kSepTol ? 1u : 0u;
    }

  private:
    PauliDiagonalCoeffs target_;
};

class Sts1Evaluator final : public FamilyEvaluator {
  public:
    explicit Sts1Evaluator(const std::vector<double>& t) : target_{t[0], t[1]} {}
    int n_params() const override { return 2; }
    const std::vector<std::string>& resource_names() const override {
        static const std::vector<std::string> names = {"mean_photons", "var_photons", "fano"};
        return names;
    }
    const std::vector<std::string>& flag_names() const override {
        static const std::vector<std::string> names = {"nonclassical"};
        return names;
    }
    bool physical(const double* p) const override {
        return p[0] > 0.0 && p[1] > 0.0 && p[1] <= 1.0;
    }
    double fidelity(const double* p) const override { return fidelity_sts1(target_, {p[0], p[1]}); }
    void resources_flags(const double* p, double* res, std::uint32_t& fam) const override {
        const STS1Params q{p[0], p[1]};
        const PhotonStatistics st = photon_stats(sts1_cm(q));
        res[0] = st.mean_n;
        res[1] = st.var_n;
        res[2] = st.fano_defined ? st.fano : kNaN;
        fam = is_nonclassical_sts1(q) ? 1u : 0u;
    }
    bool supports(WindowObservable o) const override {
        return o == WindowObservable::MeanPhotons || o == WindowObservable::PhotonVariance;
    }
    double observable(WindowObservable o, const double* p) const override {
        const PhotonStatistics st = photon_stats(sts1_cm({p[0], p[1]}));
        return o == WindowObservable::MeanPhotons ? st.mean_n : st.var_n;
    }

  private:
    STS1Params target_;
};

class DisplacedSts1Evaluator final : public FamilyEvaluator {
  public:
    explicit DisplacedSts1Evaluator(const std::vector<double>& t)
        : target_(displaced_sts1({t[1], t[0]}, t[2])) {}
    int n_params() const override { return 3; }
    const std::vector<std::string>& resource_names() const override {
        static const std::vector<std::string> names = {"mean_photons", "var_photons", "fano"};
        return names;
    }
    const std::vector<std::string>& flag_names() const override {
        static const std::vector<std::string> names = {"nonclassical", "subpoissonian"};
        return names;
    }
    bool physical(const double* p) const override {
        return p[1] > 0.0 && p[0] > 0.0 && p[0] <= 1.0 && std::isfinite(p[2]);
    }
    double fidelity(const double* p) const override {
        return fidelity_gaussian1(target_, state(p));
    }
    void resources_flags(const double* p, double* res, std::uint32_t& fam) const override {
        const PhotonStatistics st = photon_stats(state(p));
        res[0] = st.mean_n;
        res[1] = st.var_n;
        res[2] = st.fano_defined ? st.fano : kNaN;
        fam = 0;
        const double mu = p[0], s = p[1];
        if (s < mu || s > 1.0 / mu) fam |= 1u;
        if (st.fano_defined && st.fano < 1.0) fam |= 2u;
    }
    bool supports(WindowObservable o) const override {
        return o == WindowObservable::MeanPhotons || o == WindowObservable::PhotonVariance;
    }
    double observable(WindowObservable o, const double* p) const override {
        const PhotonStatistics st = photon_stats(state(p));
        return o == WindowObservable::MeanPhotons ? st.mean_n : st.var_n;
    }

  private:
    static SingleModeGaussian state(const double* p) { return displaced_sts1({p[1], p[0]}, p[2]); }
    SingleModeGaussian target_;
};

class Sts2Evaluator final : public FamilyEvaluator {
  public:
    explicit Sts2Evaluator(const std::vector<double>& t) : target_{t[0], t[1], t[2]} {}
    int n_params() const override { return 3; }
    const std::vector<std::string>& resource_names() const override {
        static const std::vector<std::string> names = {"total_photons", "dtilde_minus", "discord"};
        return names;
    }
    const std::vector<std::string>& flag_names() const override {
        static const std::vector<std::string> names = {"separable"};
        return names;
    }
    bool physical(const double* p) const override {
        return p[0] >= 0.0 && p[1] >= 0.0 && p[1] <= 1.0 && p[2] >= 0.0 && p[2] <= 1.0;
    }
    double fidelity(const double* p) const override {
        return fidelity_sts2(target_, {p[0], p[1], p[2]});
    }
    void resources_flags(const double* p, double* res, std::uint32_t& fam) const override {
        const STS2Params q{p[0], p[1], p[2]};
        const SymplecticSpectrum sp = symplectic_spectrum(sts2_coeffs(q));
        res[0] = q.n_tot;
        res[1] = sp.dt_minus;
        res[2] = gaussian_b_discord(q);
        fam = sp.dt_minus >= 0.5 - kSepTol ? 1u : 0u;
    }
    bool supports(WindowObservable o) const override {
        return o == WindowObservable::TotalPhotons;
    }
    double observable(WindowObservable, const double* p) const override { return p[0]; }

  private:
    STS2Params target_;
};

std::unique_ptr<FamilyEvaluator> make_evaluator(Family f, const std::vector<double>& target) {
    switch (f) {
        case Family::BlochQubit: return std::make_unique<BlochEvaluator>(target);
        case Family::PauliDiagonal: return std::make_unique<PdEvaluator>(target);
        case Family::Sts1: return std::make_unique<Sts1Evaluator>(target);
        case Family::DisplacedSts1: return std::make_unique<DisplacedSts1Evaluator>(target);
        case Family::Sts2: return std::make_unique<Sts2Evaluator>(target);
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// grid plumbing

struct ScanContext {
    const ScanSpec* spec = nullptr;
    std::unique_ptr<FamilyEvaluator> eval;
    std::vector<int> axis_param;            // axis index -> canonical parameter slot
    std::vector<std::uint64_t> strides;     // row-major strides per axis
    std::vector<double> base_params;        // fixed values pre-scattered
    std::vector<double> target_observables; // one per window
    std::uint64_t total = 0;
};

ScanContext prepare(const ScanSpec& spec) {
    ScanContext ctx;
    ctx.spec = &spec;
    const auto& names = family_param_names(spec.family);
    const int n = static_cast<int>(names.size());
    if (static_cast<int>(spec.target.size()) != n)
        throw std::invalid_argument("scan: target has wrong parameter count for family '" +
                                    family_name(spec.family) + "'");
    ctx.eval = make_evaluator(spec.family, spec.target);

    if (spec.axes.empty()) throw std::invalid_argument("scan: no grid axes given");
    std::set<std::string> seen;
    ctx.base_params.assign(n, kNaN);
    auto slot_of = [&](const std::string& name) {
        for (int i = 0; i < n; ++i)
            if (names[i] == name) return i;
        throw std::invalid_argument("scan: unknown axis '" + name + "' for family '" +
                                    family_name(spec.family) + "'");
    };
    for (const auto& ax : spec.axes) {
        if (!seen.insert(ax.name).second)
            throw std::invalid_argument("scan: duplicate axis '" + ax.name + "'");
        ctx.axis_param.push_back(slot_of(ax.name));
        if (ax.count >= 2) {
            if (!(ax.min < ax.max))
                throw std::invalid_argument("scan: axis '" + ax.name + "' needs min < max");
        } else if (ax.count == 1) {
            if (ax.min != ax.max)
                throw std::invalid_argument("scan: single-point axis '" + ax.name +
                                            "' needs min == max");
        } else {
            throw std::invalid_argument("scan: axis '" + ax.name + "' needs a positive point count");
        }
    }
    for (const auto& [name, value] : spec.fixed) {
        if (!seen.insert(name).second)
            throw std::invalid_argument("scan: parameter '" + name + "' both fixed and on an axis");
        ctx.base_params[slot_of(name)] = value;
    }
    if (seen.size() != static_cast<size_t>(n))
        throw std::invalid_argument("scan: axes plus fixed values must cover the family parameters");

    if (!(spec.band.f_min >= 0.0 && spec.band.f_min <= spec.band.f_max && spec.band.f_max <= 1.0))
        throw std::invalid_argument("scan: fidelity band must satisfy 0 <= f_min <= f_max <= 1");

    if (spec.windows.size() > static_cast<size_t>(kMaxWindows))
        throw std::invalid_argument("scan: too many window constraints");
    if (!ctx.eval->physical(spec.target.data()))
        throw std::invalid_argument("scan: target parameters are unphysical");
    for (const auto& w : spec.windows) {
        if (!(w.rel_tol > 0.0 && w.rel_tol < 1.0))
            throw std::invalid_argument("scan: window tolerance must lie in (0,1)");
        if (!ctx.eval->supports(w.observable))
            throw std::invalid_argument("scan: family '" + family_name(spec.family) +
                                        "' has no observable '" + observable_name(w.observable) + "'");
        ctx.target_observables.push_back(ctx.eval->observable(w.observable, spec.target.data()));
    }

    ctx.strides.assign(spec.axes.size(), 1);
    ctx.total = 1;
    for (int i = static_cast<int>(spec.axes.size()) - 1; i >= 0; --i) {
        ctx.strides[i] = ctx.total;
        ctx.total *= static_cast<std::uint64_t>(spec.axes[i].count);
    }
    return ctx;
}

double axis_value(const GridAxis& ax, int i) {
    if (ax.count == 1) return ax.min;
    return ax.min + static_cast<double>(i) * (ax.max - ax.min) / static_cast<double>(ax.count - 1);
}

void params_at(const ScanContext& ctx, std::uint64_t index, double* out) {
    const auto& spec = *ctx.spec;
    const int n = ctx.eval->n_params();
    for (int i = 0; i < n; ++i) out[i] = ctx.base_params[i];
    for (size_t a = 0; a < spec.axes.size(); ++a) {
        const int coord = static_cast<int>((index / ctx.strides[a]) % spec.axes[a].count);
        out[ctx.axis_param[a]] = axis_value(spec.axes[a], coord);
    }
}

ScanRecord eval_params(const ScanContext& ctx, const double* p, std::uint64_t index) {
    const auto& spec = *ctx.spec;
    ScanRecord rec;
    rec.grid_index = index;
    const int n = ctx.eval->n_params();
    for (int i = 0; i < n; ++i) rec.params[i] = p[i];
    rec.resources.fill(kNaN);
    if (!ctx.eval->physical(p)) {
        rec.fidelity = kNaN;
        return rec;
    }
    rec.flags |= 1u << kFlagPhysical;
    rec.fidelity = ctx.eval->fidelity(p);

    std::uint32_t fam = 0;
    ctx.eval->resources_flags(p, rec.resources.data(), fam);
    rec.flags |= fam << kFlagFamilyBase;

    if (rec.fidelity >= spec.band.f_min && rec.fidelity <= spec.band.f_max)
        rec.flags |= 1u << kFlagInBalloon;

    bool all = true;
    for (size_t w = 0; w < spec.windows.size(); ++w) {
        const double v = ctx.eval->observable(spec.windows[w].observable, p);
        const double vt = ctx.target_observables[w];
        const bool ok = std::abs(v - vt) <= spec.windows[w].rel_tol * std::abs(vt);
        if (ok)
            rec.flags |= 1u << (kFlagWindowBase + static_cast<int>(w));
        else
            all = false;
    }
    if (all) rec.flags |= 1u << kFlagInWindow;
    return rec;
}

ScanRecord eval_index(const ScanContext& ctx, std::uint64_t index) {
    double p[kMaxParams];
    params_at(ctx, index, p);
    return eval_params(ctx, p, index);
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_range(std::uint64_t begin, std::uint64_t end, int threads,
                    const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    const std::uint64_t total = end - begin;
    const std::uint64_t cap = std::max<std::uint64_t>(total / 512, 1);
    threads = resolve_threads(threads);
    if (static_cast<std::uint64_t>(threads) > cap) threads = static_cast<int>(cap);
    if (threads <= 1) {
        body(begin, end);
        return;
    }
    std::atomic<std::uint64_t> next{begin};
    constexpr std::uint64_t chunk = 2048;
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t b = next.fetch_add(chunk);
            if (b >= end) return;
            body(b, std::min(b + chunk, end));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

void fill_result_meta(const ScanContext& ctx, ScanResult& result) {
    const auto& spec = *ctx.spec;
    result.param_names = family_param_names(spec.family);
    result.resource_names = ctx.eval->resource_names();
    result.flag_names = {"physical", "in_balloon", "in_window"};
    result.flag_bits = {kFlagPhysical, kFlagInBalloon, kFlagInWindow};
    for (size_t w = 0; w < spec.windows.size(); ++w) {
        result.flag_names.push_back("in_window_" + observable_name(spec.windows[w].observable));
        result.flag_bits.push_back(kFlagWindowBase + static_cast<int>(w));
    }
    const auto& fam = ctx.eval->flag_names();
    for (size_t i = 0; i < fam.size(); ++i) {
        result.flag_names.push_back(fam[i]);
        result.flag_bits.push_back(kFlagFamilyBase + static_cast<int>(i));
    }
    // resource values at the target, reused for relative summaries
    const ScanRecord t = eval_params(ctx, spec.target.data(), 0);
    result.target_resources.assign(t.resources.begin(),
                                   t.resources.begin() + result.resource_names.size());
}

}  // namespace

namespace {

std::vector<double> benign_target(Family f) {
    switch (f) {
        case Family::BlochQubit: return {0.0, 0.0, 0.0};
        case Family::PauliDiagonal: return {0.0, 0.0, 0.0};
        case Family::Sts1: return {1.0, 1.0};
        case Family::DisplacedSts1: return {1.0, 1.0, 0.0};
        case Family::Sts2: return {0.0, 0.0, 0.5};
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::vector<std::string> family_resource_names(Family f) {
    return make_evaluator(f, benign_target(f))->resource_names();
}

std::vector<std::string> family_flag_names(Family f) {
    return make_evaluator(f, benign_target(f))->flag_names();
}

std::uint64_t grid_size(const ScanSpec& spec) { return prepare(spec).total; }

std::vector<double> grid_params(const ScanSpec& spec, std::uint64_t index) {
    const ScanContext ctx = prepare(spec);
    std::vector<double> p(ctx.eval->n_params());
    params_at(ctx, index, p.data());
    return p;
}

ScanResult scan(const ScanSpec& spec, int threads) {
    const ScanContext ctx = prepare(spec);
    if (ctx.total > (1ull << 25))
        throw std::invalid_argument("scan: grid too large to materialize; use scan_visit");
    ScanResult result;
    result.spec = spec;
    fill_result_meta(ctx, result);
    result.records.resize(ctx.total);
    parallel_range(0, ctx.total, threads, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) result.records[i] = eval_index(ctx, i);
    });
    return result;
}

void scan_visit(const ScanSpec& spec, int threads,
                const std::function<void(const ScanRecord&)>& visit) {
    const ScanContext ctx = prepare(spec);
    constexpr std::uint64_t block = 1ull << 16;
    std::vector<ScanRecord> buffer;
    for (std::uint64_t begin = 0; begin < ctx.total; begin += block) {
        const std::uint64_t end = std::min(begin + block, ctx.total);
        buffer.resize(end - begin);
        parallel_range(begin, end, threads, [&](std::uint64_t b, std::uint64_t e) {
            for (std::uint64_t i = b; i < e; ++i) buffer[i - begin] = eval_index(ctx, i);
        });
        for (const ScanRecord& r : buffer) visit(r);
    }
}

ScanRecord evaluate_point(const ScanSpec& spec, const std::vector<double>& params,
                          std::uint64_t grid_index) {
    const ScanContext ctx = prepare(spec);
    if (params.size() != spec.target.size())
        throw std::invalid_argument("evaluate_point: wrong parameter count");
    return eval_params(ctx, params.data(), grid_index);
}

RegionSummary summarize(const ScanResult& result, const std::vector<std::string>& classifiers) {
    std::vector<int> class_bits;
    for (const auto& name : classifiers) {
        auto it = std::find(result.flag_names.begin(), result.flag_names.end(), name);
        if (it == result.flag_names.end())
            throw std::invalid_argument("summarize: unknown classifier flag '" + name + "'");
        class_bits.push_back(result.flag_bits[it - result.flag_names.begin()]);
    }

    const size_t nres = result.resource_names.size();
    struct Acc {
        double min = std::numeric_limits<double>::infinity();
        double max = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        std::uint64_t count = 0;
        void add(double v) {
            if (std::isnan(v)) return;
            min = std::min(min, v);
            max = std::max(max, v);
            sum += v;
            ++count;
        }
    };
    std::vector<Acc> acc(nres), acc_win(nres);
    std::vector<ClassCount> cls(classifiers.size()), cls_win(classifiers.size());

    RegionSummary s;
    s.total_points = result.records.size();
    for (const ScanRecord& r : result.records) {
        const bool physical = r.flag(kFlagPhysical);
        if (physical) ++s.physical_points;
        if (!physical || !r.flag(kFlagInBalloon)) continue;
        ++s.balloon_points;
        const bool win = r.flag(kFlagInWindow);
        if (win) ++s.window_points;
        for (size_t i = 0; i < nres; ++i) {
            acc[i].add(r.resources[i]);
            if (win) acc_win[i].add(r.resources[i]);
        }
        for (size_t c = 0; c < class_bits.size(); ++c) {
            const bool v = r.flag(class_bits[c]);
            (v ? cls[c].count_true : cls[c].count_false)++;
            if (win) (v ? cls_win[c].count_true : cls_win[c].count_false)++;
        }
    }
    for (size_t i = 0; i < nres; ++i) {
        if (acc[i].count > 0)
            s.resources[result.resource_names[i]] = {acc[i].min, acc[i].max,
                                                     acc[i].sum / acc[i].count, acc[i].count};
        if (acc_win[i].count > 0)
            s.resources_window[result.resource_names[i]] = {
                acc_win[i].min, acc_win[i].max, acc_win[i].sum / acc_win[i].count, acc_win[i].count};
    }
    for (size_t c = 0; c < classifiers.size(); ++c) {
        cls[c].crosses_boundary = cls[c].count_true > 0 && cls[c].count_false > 0;
        cls_win[c].crosses_boundary = cls_win[c].count_true > 0 && cls_win[c].count_false > 0;
        s.class_counts[classifiers[c]] = cls[c];
        s.class_counts_window[classifiers[c]] = cls_win[c];
    }
    return s;
}

std::vector<ScanRecord> refine_boundary(const ScanResult& result, const std::string& classifier,
                                        double resolution) {
    const auto it = std::find(result.flag_names.begin(), result.flag_names.end(), classifier);
    if (it == result.flag_names.end())
        throw std::invalid_argument("refine_boundary: unknown classifier flag '" + classifier + "'");
    const int bit = result.flag_bits[it - result.flag_names.begin()];

    const ScanContext ctx = prepare(result.spec);
    const auto& spec = result.spec;
    std::vector<ScanRecord> out;

    auto in_balloon = [](const ScanRecord& r) {
        return r.flag(kFlagPhysical) && r.flag(kFlagInBalloon);
    };

    for (const ScanRecord& rec : result.records) {
        if (!in_balloon(rec)) continue;
        for (size_t a = 0; a < spec.axes.size(); ++a) {
            const int coord = static_cast<int>((rec.grid_index / ctx.strides[a]) % spec.axes[a].count);
            if (coord + 1 >= spec.axes[a].count) continue;
            const ScanRecord& nb = result.records[rec.grid_index + ctx.strides[a]];
            if (!in_balloon(nb) || nb.flag(bit) == rec.flag(bit)) continue;

            const int slot = ctx.axis_param[a];
            double lo[kMaxParams], hi[kMaxParams];
            for (int i = 0; i < ctx.eval->n_params(); ++i) {
                lo[i] = rec.params[i];
                hi[i] = nb.params[i];
            }
            const bool lo_class = rec.flag(bit);
            bool ok = true;
            while (std::abs(hi[slot] - lo[slot]) > resolution) {
                double mid[kMaxParams];
                for (int i = 0; i < ctx.eval->n_params(); ++i) mid[i] = lo[i];
                mid[slot] = 0.5 * (lo[slot] + hi[slot]);
                if (!ctx.eval->physical(mid)) {
                    ok = false;
                    break;
                }
                const ScanRecord m = eval_params(ctx, mid, rec.grid_index);
                if (m.flag(bit) == lo_class)
                    lo[slot] = mid[slot];
                else
                    hi[slot] = mid[slot];
            }
            if (!ok) continue;
            std::vector<double> plo(lo, lo + ctx.eval->n_params());
            std::vector<double> phi(hi, hi + ctx.eval->n_params());
            const ScanRecord rlo = eval_params(ctx, plo.data(), rec.grid_index);
            const ScanRecord rhi = eval_params(ctx, phi.data(), rec.grid_index);
            if (in_balloon(rlo) && in_balloon(rhi) && rlo.flag(bit) != rhi.flag(bit)) {
                out.push_back(rlo);
                out.push_back(rhi);
            }
        }
    }
    return out;
}

}  // namespace fidres
