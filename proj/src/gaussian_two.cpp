#include "fidres/gaussian_two.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fidres {

namespace {

constexpr double kTol = 1e-12;

RMatrix omega4() {
    RMatrix w(4);
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    w(2, 3) = 1.0;
    w(3, 2) = -1.0;
    return w;
}

void validate_coeffs(const CMCoeffs& m, const char* who) {
    if (m.a < 1.0 - 1e-9 || m.b < 1.0 - 1e-9 || m.c < -kTol)
        throw std::invalid_argument(std::string(who) + ": invalid covariance coefficients");
}

}  // namespace

void validate_sts2(const STS2Params& p) {
    if (!(p.n_tot >= 0.0)) throw std::invalid_argument("sts2: total photon number must be nonnegative");
    if (!(p.beta >= 0.0 && p.beta <= 1.0))
        throw std::invalid_argument("sts2: squeezing fraction must lie in [0,1]");
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0))
        throw std::invalid_argument("sts2: thermal fraction must lie in [0,1]");
}

CMCoeffs sts2_coeffs(const STS2Params& p) {
    validate_sts2(p);
    const double n = p.n_tot;
    const double bn = p.beta * n;
    CMCoeffs m;
    m.a = 1.0 + (2.0 * p.gamma * (1.0 - p.beta) * n + bn * (1.0 + n)) / (1.0 + bn);
    m.b = 1.0 + (2.0 * (1.0 - p.gamma) * (1.0 - p.beta) * n + bn * (1.0 + n)) / (1.0 + bn);
    m.c = (1.0 + n) * std::sqrt(std::max(bn * (2.0 + bn), 0.0)) / (1.0 + bn);
    return m;
}

RMatrix sts2_cm(const CMCoeffs& m) {
    RMatrix s(4);
    s(0, 0) = s(1, 1) = 0.5 * m.a;
    s(2, 2) = s(3, 3) = 0.5 * m.b;
    s(0, 2) = s(2, 0) = 0.5 * m.c;
    s(1, 3) = s(3, 1) = -0.5 * m.c;
    return s;
}

SymplecticSpectrum symplectic_spectrum(const CMCoeffs& m) {
    validate_coeffs(m, "symplectic_spectrum");
    const double det_cm = std::pow((m.a * m.b - m.c * m.c) / 4.0, 2);
    const double scale = std::max(1.0, m.a * m.a + m.b * m.b);
    auto pair_from = [&](double delta) {
        double disc = delta * delta - 4.0 * det_cm;
        if (disc < -1e-12 * scale * scale)
            throw std::invalid_argument("symplectic_spectrum: invariant discriminant is negative");
        disc = std::max(disc, 0.0);
        const double root = std::sqrt(disc);
        const double lo = std::max((delta - root) / 2.0, 0.0);
        const double hi = std::max((delta + root) / 2.0, 0.0);
        return std::pair<double, double>{std::sqrt(lo), std::sqrt(hi)};
    };
    const double delta = (m.a * m.a + m.b * m.b - 2.0 * m.c * m.c) / 4.0;
    const double delta_pt = (m.a * m.a + m.b * m.b + 2.0 * m.c * m.c) / 4.0;
    SymplecticSpectrum sp;
    std::tie(sp.d_minus, sp.d_plus) = pair_from(delta);
    std::tie(sp.dt_minus, sp.dt_plus) = pair_from(delta_pt);
    return sp;
}

bool is_physical_cm(const CMCoeffs& m) {
    return symplectic_spectrum(m).d_minus >= 0.5 - kTol;
}

bool is_separable(const STS2Params& p) {
    return symplectic_spectrum(sts2_coeffs(p)).dt_minus >= 0.5 - kTol;
}

double gaussian_entropy(double x) {
    if (x < 0.5 - 1e-9) throw std::domain_error("gaussian_entropy: argument below 1/2");
    const double plus = x + 0.5;
    const double minus = std::max(x - 0.5, 0.0);
    double h = plus * std::log(plus);
    if (minus > 0.0) h -= minus * std::log(minus);
    return h;
}

double gaussian_b_discord(const STS2Params& p) {
    const CMCoeffs m = sts2_coeffs(p);
    const SymplecticSpectrum sp = symplectic_spectrum(m);
    // covariance-block entries carry the 1/2 prefactor
    const double ha = 0.5 * m.a;
    const double hb = 0.5 * m.b;
    const double hc = 0.5 * m.c;
    const double conditional = ha - hc * hc / (hb + 0.5);
    double d = gaussian_entropy(hb) - gaussian_entropy(sp.d_minus) - gaussian_entropy(sp.d_plus) +
               gaussian_entropy(conditional);
    if (d < 0.0 && d > -1e-12) d = 0.0;
    return d;
}

double fidelity_sts2(const STS2Params& p1, const STS2Params& p2) {
    const RMatrix s1 = sts2_cm(sts2_coeffs(p1));
    const RMatrix s2 = sts2_cm(sts2_coeffs(p2));
    const RMatrix sum = add(s1, s2);
    const double det_sum = det_sym(sum);

    const RMatrix w = omega4();
    RMatrix m = mul(mul(w, s1), mul(w, s2));
    for (int i = 0; i < 4; ++i) m(i, i) -= 0.25;
    const double e1 = std::max(det_real(m) / det_sum, 0.0);

    auto det_shifted = [&](const RMatrix& s) {
        CMatrix z = to_complex(s);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) z(i, j) += cdouble(0.0, 0.5) * w(i, j);
        return det_complex(z).real();
    };
    const double e2 = std::max(det_shifted(s1) * det_shifted(s2) / det_sum, 0.0);

    const double x = 2.0 * std::sqrt(e1) + 2.0 * std::sqrt(e2) + 0.5;
    const double root = std::sqrt(x) + std::sqrt(std::max(x - 1.0, 0.0));
    return std::min(root * root / std::sqrt(det_sum), 1.0);
}

double mean_total_photons(const STS2Params& p) {
    validate_sts2(p);
    return p.n_tot;
}

double mean_total_photons_from_cm(const CMCoeffs& m) {
    return 0.5 * (m.a + m.b - 2.0);
}

}  // namespace fidres
