#include "fidres/gaussian_single.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fidres {

namespace {

constexpr double kCmTol = 1e-12;
constexpr double kDeficitTol = 1e-8;

double det2(const RMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

void validate_sts1(const STS1Params& p) {
    if (!(p.s > 0.0)) throw std::invalid_argument("sts1: squeezing factor must be positive");
    if (!(p.mu > 0.0 && p.mu <= 1.0)) throw std::invalid_argument("sts1: purity must lie in (0,1]");
}

void validate_single_mode(const SingleModeGaussian& g) {
    if (g.cm.dim() != 2) throw std::invalid_argument("single-mode state: covariance matrix must be 2x2");
    if (g.cm.symmetry_error() > kCmTol)
        throw std::invalid_argument("single-mode state: covariance matrix must be symmetric");
    if (!(g.cm(0, 0) > 0.0) || det2(g.cm) < 0.25 - kCmTol)
        throw std::invalid_argument("single-mode state: covariance matrix violates the uncertainty bound");
}

SingleModeGaussian sts1_cm(const STS1Params& p) {
    validate_sts1(p);
    SingleModeGaussian g;
    g.mean = {0.0, 0.0};
    g.cm = RMatrix(2);
    g.cm(0, 0) = 1.0 / (2.0 * p.mu * p.s);
    g.cm(1, 1) = p.s / (2.0 * p.mu);
    return g;
}

bool is_nonclassical_sts1(const STS1Params& p) {
    validate_sts1(p);
    return p.s < p.mu || p.s > 1.0 / p.mu;
}

namespace {

double fidelity_from_cms(const RMatrix& cm1, const RMatrix& cm2) {
    RMatrix sum = add(cm1, cm2);
    const double delta_big = det2(sum);
    double delta_small = 4.0 * (det2(cm1) - 0.25) * (det2(cm2) - 0.25);
    delta_small = std::max(delta_small, 0.0);
    const double f = 1.0 / (std::sqrt(delta_big + delta_small) - std::sqrt(delta_small));
    return std::min(f, 1.0);
}

}  // namespace

double fidelity_sts1(const STS1Params& a, const STS1Params& b) {
    return fidelity_from_cms(sts1_cm(a).cm, sts1_cm(b).cm);
}

SingleModeGaussian displaced_sts1(const STS1Params& p, double x) {
    SingleModeGaussian g = sts1_cm(p);
    g.mean = {x, 0.0};
    return g;
}

double fidelity_gaussian1(const SingleModeGaussian& g1, const SingleModeGaussian& g2) {
    validate_single_mode(g1);
    validate_single_mode(g2);
    RMatrix sum = add(g1.cm, g2.cm);
    const double det = det2(sum);
    if (det <= 0.0) throw std::invalid_argument("fidelity_gaussian1: singular covariance sum");
    const double dx = g1.mean[0] - g2.mean[0];
    const double dp = g1.mean[1] - g2.mean[1];
    // 2x2 inverse applied to the mean difference
    const double quad =
        (sum(1, 1) * dx * dx - 2.0 * sum(0, 1) * dx * dp + sum(0, 0) * dp * dp) / det;
    return std::min(std::exp(-quad) * fidelity_from_cms(g1.cm, g2.cm), 1.0);
}

PhotonStatistics photon_stats(const SingleModeGaussian& g) {
    validate_single_mode(g);
    const double tr = g.cm.trace();
    const double tr2 = g.cm(0, 0) * g.cm(0, 0) + 2.0 * g.cm(0, 1) * g.cm(0, 1) + g.cm(1, 1) * g.cm(1, 1);
    const double x = g.mean[0];
    const double p = g.mean[1];
    PhotonStatistics st;
    st.mean_n = 0.5 * (tr - 1.0) + x * x + p * p;
    const double xsx = g.cm(0, 0) * x * x + 2.0 * g.cm(0, 1) * x * p + g.cm(1, 1) * p * p;
    st.var_n = 0.5 * (tr2 - 0.5) + 2.0 * xsx;
    st.fano_defined = st.mean_n > 1e-12;
    st.fano = st.fano_defined ? st.var_n / st.mean_n : std::nan("");
    return st;
}

bool is_subpoissonian(const SingleModeGaussian& g) {
    const PhotonStatistics st = photon_stats(g);
    if (!st.fano_defined)
        throw std::invalid_argument("is_subpoissonian: Fano factor undefined for a zero-photon state");
    return st.fano < 1.0;
}

namespace detail {

RMatrix squeeze_matrix(double r, int dim) {
    RMatrix s(dim);
    if (r == 0.0) return RMatrix::identity(dim);
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    const double th = std::tanh(r);
    // column 0: squeezed vacuum, even levels only
    s(0, 0) = 1.0 / std::sqrt(ch);
    for (int k = 0; 2 * k + 2 < dim; ++k) {
        const int m = 2 * k;
        s(m + 2, 0) = s(m, 0) * th * std::sqrt(static_cast<double>((m + 1)) * (m + 2)) / (2.0 * (k + 1));
    }
    // remaining columns from  a^dag S|n> = sqrt(n+1) ch S|n+1> + sqrt(n) sh S|n-1>
    for (int n = 0; n + 1 < dim; ++n) {
        const double inv = 1.0 / (std::sqrt(static_cast<double>(n + 1)) * ch);
        const double sn = n > 0 ? std::sqrt(static_cast<double>(n)) * sh : 0.0;
        for (int m = (n + 1) % 2; m < dim; m += 2) {
            double v = 0.0;
            if (m > 0) v += std::sqrt(static_cast<double>(m)) * s(m - 1, n);
            if (n > 0) v -= sn * s(m, n - 1);
            s(m, n + 1) = v * inv;
        }
    }
    return s;
}

RMatrix displacement_matrix(double x, int dim) {
    RMatrix d(dim);
    if (x == 0.0) return RMatrix::identity(dim);
    // column 0: coherent state
    d(0, 0) = std::exp(-0.5 * x * x);
    for (int m = 1; m < dim; ++m) d(m, 0) = d(m - 1, 0) * x / std::sqrt(static_cast<double>(m));
    // remaining columns from  a^dag D|n> = sqrt(n+1) D|n+1> + x D|n>
    for (int n = 0; n + 1 < dim; ++n) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(n + 1));
        for (int m = 0; m < dim; ++m) {
            double v = -x * d(m, n);
            if (m > 0) v += std::sqrt(static_cast<double>(m)) * d(m - 1, n);
            d(m, n + 1) = v * inv;
        }
    }
    return d;
}

}  // namespace detail

namespace {

struct GaussianDecomposition {
    double thermal_n;
    double r;  // squeeze parameter, s = e^{-2r}
    double x;  // real displacement
};

GaussianDecomposition decompose(const SingleModeGaussian& g) {
    validate_single_mode(g);
    const double scale = std::max(1.0, g.cm.max_abs());
    if (std::abs(g.cm(0, 1)) > 1e-10 * scale || std::abs(g.mean[1]) > 1e-10)
        throw std::invalid_argument(
            "fock_state: only diagonal covariance matrices with real displacement are supported");
    const double det = det2(g.cm);
    GaussianDecomposition d;
    d.thermal_n = std::max(std::sqrt(det) - 0.5, 0.0);
    d.r = -0.25 * std::log(g.cm(1, 1) / g.cm(0, 0));  // s = sqrt(cm_pp/cm_xx), r = -ln(s)/2
    d.x = g.mean[0];
    return d;
}

// mass of the geometric photon distribution at or above level w
double thermal_tail(double n, int w) {
    if (n <= 1e-300) return 0.0;
    return std::exp(w * std::log(n / (n + 1.0)));
}

}  // namespace

FockBuild fock_state_build(const SingleModeGaussian& g, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("fock_state: cutoff must be positive");
    const GaussianDecomposition d = decompose(g);

    // The recursions give exact matrix elements; the working dimension only
    // has to cover the thermal column weights and the operator-product
    // support. Start from a support estimate and grow until the construction
    // passes its trace and edge-occupancy checks.
    const double spread = std::exp(2.0 * std::abs(d.r));
    int w = std::max(cutoff + 16,
                     static_cast<int>(std::ceil(
                         std::pow(std::sqrt(cutoff * spread) + std::abs(d.x), 2.0))) +
                         24);
    for (int attempt = 0; attempt < 5; ++attempt, w = w * 3 / 2 + 16) {
        std::vector<double> thermal(w, 0.0);
        if (d.thermal_n <= 1e-300) {
            thermal[0] = 1.0;
        } else {
            const double ratio = d.thermal_n / (d.thermal_n + 1.0);
            thermal[0] = 1.0 / (d.thermal_n + 1.0);
            for (int k = 1; k < w; ++k) thermal[k] = thermal[k - 1] * ratio;
        }

        RMatrix u = detail::squeeze_matrix(d.r, w);
        if (d.x != 0.0) {
            if (d.r != 0.0)
                u = mul(detail::displacement_matrix(d.x, w), u);
            else
                u = detail::displacement_matrix(d.x, w);
        }

        RMatrix scaled(w);
        for (int i = 0; i < w; ++i)
            for (int k = 0; k < w; ++k) scaled(i, k) = u(i, k) * thermal[k];

        // full diagonal of rho = U diag(thermal) U^T; cheap integrity check
        double total = 0.0, edge = 0.0;
        for (int m = 0; m < w; ++m) {
            double v = 0.0;
            for (int k = 0; k < w; ++k) v += scaled(m, k) * u(m, k);
            total += v;
            if (m >= w - 4) edge += v;
        }
        const double expected = 1.0 - thermal_tail(d.thermal_n, w);
        if (std::abs(total - expected) > 1e-9 || edge > 1e-11) continue;

        CMatrix rho(cutoff);
        double captured = 0.0;
        for (int i = 0; i < cutoff; ++i) {
            for (int j = i; j < cutoff; ++j) {
                double v = 0.0;
                for (int k = 0; k < w; ++k) v += scaled(i, k) * u(j, k);
                rho(i, j) = v;
                rho(j, i) = v;
            }
            captured += rho(i, i).real();
        }
        return {std::move(rho), 1.0 - captured};
    }
    throw std::runtime_error("fock_state: construction did not stabilize");
}

CMatrix fock_state(const SingleModeGaussian& g, int cutoff) {
    FockBuild b = fock_state_build(g, cutoff);
    if (b.trace_deficit > kDeficitTol)
        throw std::runtime_error("fock_state: insufficient cutoff " + std::to_string(cutoff) +
                                 " (achieved trace " + std::to_string(1.0 - b.trace_deficit) + ")");
    return b.rho;
}

int adaptive_fock_cutoff(const SingleModeGaussian& g) {
    for (int cutoff = 30; cutoff <= 960; cutoff *= 2) {
        if (fock_state_build(g, cutoff).trace_deficit < kDeficitTol) return cutoff;
    }
    throw std::runtime_error("adaptive_fock_cutoff: state requires more than 960 Fock levels");
}

}  // namespace fidres
