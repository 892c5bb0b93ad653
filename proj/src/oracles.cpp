#include "fidres/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fidres::oracles {

namespace {

double entropy_bits_of(const CMatrix& rho) {
    std::vector<double> lam = eigvals_hermitian(rho);
    for (double& l : lam) l = std::max(l, 0.0);
    return shannon_bits(lam);
}

// average conditional entropy of A after measuring B along (theta, phi)
double conditional_entropy(const CMatrix& rho, double theta, double phi) {
    const double nx = std::sin(theta) * std::cos(phi);
    const double ny = std::sin(theta) * std::sin(phi);
    const double nz = std::cos(theta);
    CMatrix proj(2);
    proj(0, 0) = 0.5 * (1.0 + nz);
    proj(1, 1) = 0.5 * (1.0 - nz);
    proj(0, 1) = 0.5 * cdouble(nx, -ny);
    proj(1, 0) = 0.5 * cdouble(nx, ny);

    double total = 0.0;
    for (int outcome = 0; outcome < 2; ++outcome) {
        CMatrix m(4);  // I (x) proj
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int bp = 0; bp < 2; ++bp) m(2 * a + b, 2 * a + bp) = proj(b, bp);
        CMatrix post = mul(mul(m, rho), m);
        const double p = post.trace().real();
        if (p > 1e-14) {
            CMatrix ra = partial_trace_b(post);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) ra(i, j) /= p;
            total += p * entropy_bits_of(ra);
        }
        // flip to the orthogonal projector for the second outcome
        proj(0, 0) = 1.0 - proj(0, 0).real();
        proj(1, 1) = 1.0 - proj(1, 1).real();
        proj(0, 1) = -proj(0, 1);
        proj(1, 0) = -proj(1, 0);
    }
    return total;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double pd_discord_measurement(const PauliDiagonalCoeffs& c) {
    const CMatrix rho = pd_to_density_matrix(c);
    const double s_ab = entropy_bits_of(rho);
    const double s_b = entropy_bits_of(partial_trace_a(rho));

    constexpr int kTheta = 91;
    constexpr int kPhi = 181;
    const double pi = std::numbers::pi;
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    for (int it = 0; it < kTheta; ++it) {
        const double theta = pi * it / (kTheta - 1);
        for (int ip = 0; ip < kPhi; ++ip) {
            const double phi = 2.0 * pi * ip / kPhi;
            const double v = conditional_entropy(rho, theta, phi);
            if (v < best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }
    const double dtheta = pi / (kTheta - 1);
    const double dphi = 2.0 * pi / kPhi;
    for (int round = 0; round < 3; ++round) {
        best_theta = golden_min(
            [&](double t) { return conditional_entropy(rho, t, best_phi); },
            std::max(best_theta - dtheta, 0.0), std::min(best_theta + dtheta, pi), 1e-8);
        best_phi = golden_min(
            [&](double p) { return conditional_entropy(rho, best_theta, p); },
            best_phi - dphi, best_phi + dphi, 1e-8);
    }
    best = std::min(best, conditional_entropy(rho, best_theta, best_phi));
    return s_b - s_ab + best;
}

double negativity_partial_transpose(const PauliDiagonalCoeffs& c) {
    const CMatrix pt = partial_transpose_a(pd_to_density_matrix(c));
    double neg = 0.0;
    for (double lam : eigvals_hermitian(pt))
        if (lam < 0.0) neg -= 2.0 * lam;
    return neg;
}

namespace {

void normalize_state(CMatrix& rho) {
    const double tr = rho.trace().real();
    for (auto& v : rho.data()) v /= tr;
}

}  // namespace

double fock_fidelity(const SingleModeGaussian& g1, const SingleModeGaussian& g2) {
    const int cutoff = std::max(adaptive_fock_cutoff(g1), adaptive_fock_cutoff(g2));
    CMatrix r1 = fock_state(g1, cutoff);
    CMatrix r2 = fock_state(g2, cutoff);
    normalize_state(r1);
    normalize_state(r2);
    return uhlmann_fidelity(r1, r2);
}

PhotonStatistics fock_photon_stats(const SingleModeGaussian& g) {
    // one doubling past the trace criterion: the n^2-weighted tail converges
    // slower than the occupation itself
    const int cutoff = 2 * adaptive_fock_cutoff(g);
    CMatrix rho = fock_state(g, cutoff);
    normalize_state(rho);
    double mean = 0.0, second = 0.0;
    for (int n = 0; n < cutoff; ++n) {
        const double p = rho(n, n).real();
        mean += n * p;
        second += static_cast<double>(n) * n * p;
    }
    PhotonStatistics st;
    st.mean_n = mean;
    st.var_n = second - mean * mean;
    st.fano_defined = mean > 1e-12;
    st.fano = st.fano_defined ? st.var_n / st.mean_n : std::nan("");
    return st;
}

double tmsv_fock_fidelity(double n1, double n2, int cutoff) {
    auto pair_state = [&](double n_tot) {
        const double r = std::asinh(std::sqrt(n_tot / 2.0));
        const double th = std::tanh(r);
        std::vector<double> v(cutoff);
        v[0] = 1.0 / std::cosh(r);
        for (int k = 1; k < cutoff; ++k) v[k] = v[k - 1] * th;
        CMatrix rho(cutoff);
        for (int i = 0; i < cutoff; ++i)
            for (int j = 0; j < cutoff; ++j) rho(i, j) = v[i] * v[j];
        normalize_state(rho);
        return rho;
    };
    return uhlmann_fidelity(pair_state(n1), pair_state(n2));
}

double thermal_product_fidelity(double n1a, double n2a, double n1b, double n2b, int cutoff) {
    auto mode_fidelity = [&](double na, double nb) {
        double s = 0.0;
        double pa = 1.0 / (na + 1.0), pb = 1.0 / (nb + 1.0);
        const double ra = na / (na + 1.0), rb = nb / (nb + 1.0);
        for (int n = 0; n < cutoff; ++n) {
            s += std::sqrt(pa * pb);
            pa *= ra;
            pb *= rb;
        }
        return s * s;
    };
    return mode_fidelity(n1a, n1b) * mode_fidelity(n2a, n2b);
}

namespace {

std::array<double, 2> symplectic_from(const RMatrix& cm) {
    CMatrix s = sqrt_psd(to_complex(cm));
    RMatrix omega(4);
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    CMatrix h = mul(mul(s, to_complex(omega)), s);
    for (auto& v : h.data()) v *= cdouble(0.0, 1.0);
    const std::vector<double> lam = eigvals_hermitian(h);  // (-d+, -d-, d-, d+)
    return {lam[2], lam[3]};
}

}  // namespace

std::array<double, 2> symplectic_eigenvalues(const RMatrix& cm) { return symplectic_from(cm); }

std::array<double, 2> symplectic_eigenvalues_pt(const RMatrix& cm) {
    RMatrix pt = cm;
    for (int i = 0; i < 4; ++i) {
        pt(3, i) = -pt(3, i);
        pt(i, 3) = -pt(i, 3);
    }
    return symplectic_from(pt);
}

}  // namespace fidres::oracles
