#include "fidres/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fidres {

namespace {

constexpr double kPhysTol = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_physical(const PauliDiagonalCoeffs& c, const char* who) {
    if (!is_physical_pd(c))
        throw std::invalid_argument(std::string(who) + ": coefficients are outside the physical tetrahedron");
}

void require_state(const CMatrix& r, const char* who) {
    if (r.hermiticity_error() > 1e-10 * std::max(1.0, r.max_abs()))
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
    if (std::abs(r.trace() - cdouble(1.0, 0.0)) > 1e-8)
        throw std::invalid_argument(std::string(who) + ": matrix is not unit trace");
}

}  // namespace

PDEigenvalues pd_eigenvalues(const PauliDiagonalCoeffs& c) {
    return {0.25 * (1.0 - c.c1 - c.c2 - c.c3), 0.25 * (1.0 - c.c1 + c.c2 + c.c3),
            0.25 * (1.0 + c.c1 - c.c2 + c.c3), 0.25 * (1.0 + c.c1 + c.c2 - c.c3)};
}

bool is_physical_pd(const PauliDiagonalCoeffs& c) {
    const PDEigenvalues lam = pd_eigenvalues(c);
    return *std::min_element(lam.begin(), lam.end()) >= -kPhysTol;
}

CMatrix pd_to_density_matrix(const PauliDiagonalCoeffs& c) {
    require_physical(c, "pd_to_density_matrix");
    CMatrix r(4);
    r(0, 0) = r(3, 3) = 0.25 * (1.0 + c.c3);
    r(1, 1) = r(2, 2) = 0.25 * (1.0 - c.c3);
    r(0, 3) = r(3, 0) = 0.25 * (c.c1 - c.c2);
    r(1, 2) = r(2, 1) = 0.25 * (c.c1 + c.c2);
    return r;
}

double pd_fidelity(const PauliDiagonalCoeffs& a, const PauliDiagonalCoeffs& b) {
    require_physical(a, "pd_fidelity");
    require_physical(b, "pd_fidelity");
    const PDEigenvalues la = pd_eigenvalues(a);
    const PDEigenvalues lb = pd_eigenvalues(b);
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += std::sqrt(std::max(la[k], 0.0) * std::max(lb[k], 0.0));
    return std::clamp(s * s, 0.0, 1.0);
}

double uhlmann_fidelity(const CMatrix& r1, const CMatrix& r2) {
    if (r1.dim() != r2.dim()) throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
    require_state(r1, "uhlmann_fidelity");
    require_state(r2, "uhlmann_fidelity");
    const CMatrix s1 = sqrt_psd(r1);  // also rejects non-PSD r1
    {
        const auto ev2 = eigvals_hermitian(r2);
        if (ev2.front() < -1e-10)
            throw std::invalid_argument("uhlmann_fidelity: second argument is not PSD");
    }
    CMatrix m = mul(mul(s1, r2), s1);
    // symmetrize round-off before the eigensolve
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i; j < m.dim(); ++j) {
            const cdouble v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    const std::vector<double> lam = eigvals_hermitian(m);
    // eigenvalues at round-off scale would inflate through the square root
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                         std::max(lam.empty() ? 0.0 : lam.back(), 0.0);
    double s = 0.0;
    for (double l : lam)
        if (l > floor) s += std::sqrt(l);
    return std::clamp(s * s, 0.0, 1.0);
}

double trace_distance(const CMatrix& r1, const CMatrix& r2) {
    if (r1.dim() != r2.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    require_state(r1, "trace_distance");
    require_state(r2, "trace_distance");
    double s = 0.0;
    for (double lam : eigvals_hermitian(sub(r1, r2))) s += std::abs(lam);
    return 0.5 * s;
}

double bures_distance(const CMatrix& r1, const CMatrix& r2) {
    return std::sqrt(std::max(2.0 * (1.0 - std::sqrt(uhlmann_fidelity(r1, r2))), 0.0));
}

double negativity(const PauliDiagonalCoeffs& c) {
    require_physical(c, "negativity");
    // the partial transpose of a Pauli-diagonal state is Pauli diagonal with
    // the sign of c2 flipped
    const PDEigenvalues eta = pd_eigenvalues({c.c1, -c.c2, c.c3});
    double neg = 0.0;
    for (double e : eta)
        if (e < 0.0) neg -= 2.0 * e;
    return neg;
}

double pd_discord(const PauliDiagonalCoeffs& c) {
    require_physical(c, "pd_discord");
    const PDEigenvalues lam = pd_eigenvalues(c);
    double mutual = 2.0;
    for (double l : lam) mutual += xlog2x(l);
    const double cmax = std::max({std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)});
    const double classical = 0.5 * (xlog2x(1.0 - cmax) + xlog2x(1.0 + cmax));
    double d = mutual - classical;
    if (d < 0.0 && d > -1e-12) d = 0.0;
    return d;
}

PauliDiagonalCoeffs werner(double cw) {
    if (!(cw >= 0.0 && cw <= 1.0)) throw std::invalid_argument("werner: parameter must lie in [0,1]");
    return {-cw, -cw, -cw};
}

double qubit_fidelity_to_zero(const BlochVector& r) {
    const double n2 = r.rx * r.rx + r.ry * r.ry + r.rz * r.rz;
    if (n2 > 1.0 + 1e-12) throw std::invalid_argument("qubit_fidelity_to_zero: Bloch vector outside the unit ball");
    return 0.5 * (1.0 + r.rz);
}

double bloch_fidelity(const BlochVector& r1, const BlochVector& r2) {
    const double n1 = r1.rx * r1.rx + r1.ry * r1.ry + r1.rz * r1.rz;
    const double n2 = r2.rx * r2.rx + r2.ry * r2.ry + r2.rz * r2.rz;
    if (n1 > 1.0 + 1e-12 || n2 > 1.0 + 1e-12)
        throw std::invalid_argument("bloch_fidelity: Bloch vector outside the unit ball");
    const double dot = r1.rx * r2.rx + r1.ry * r2.ry + r1.rz * r2.rz;
    const double f = 0.5 * (1.0 + dot) + 0.5 * std::sqrt(std::max(1.0 - n1, 0.0) * std::max(1.0 - n2, 0.0));
    return std::clamp(f, 0.0, 1.0);
}

CMatrix bloch_to_density_matrix(const BlochVector& r) {
    CMatrix m(2);
    m(0, 0) = 0.5 * (1.0 + r.rz);
    m(1, 1) = 0.5 * (1.0 - r.rz);
    m(0, 1) = 0.5 * cdouble(r.rx, -r.ry);
    m(1, 0) = 0.5 * cdouble(r.rx, r.ry);
    return m;
}

ResourceReport pd_resource_report(const PauliDiagonalCoeffs& target, const PauliDiagonalCoeffs& c) {
    ResourceReport rep;
    rep.fidelity_to_target = pd_fidelity(target, c);
    rep.negativity = negativity(c);
    rep.discord = pd_discord(c);
    rep.separable = rep.negativity <= kPhysTol;
    return rep;
}

CMatrix partial_transpose_a(const CMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("partial_transpose_a: expected a 4x4 matrix");
    CMatrix r(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp) r(2 * a + b, 2 * ap + bp) = rho(2 * ap + b, 2 * a + bp);
    return r;
}

CMatrix partial_trace_a(const CMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("partial_trace_a: expected a 4x4 matrix");
    CMatrix r(2);
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
            for (int a = 0; a < 2; ++a) r(b, bp) += rho(2 * a + b, 2 * a + bp);
    return r;
}

CMatrix partial_trace_b(const CMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("partial_trace_b: expected a 4x4 matrix");
    CMatrix r(2);
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap)
            for (int b = 0; b < 2; ++b) r(a, ap) += rho(2 * a + b, 2 * ap + b);
    return r;
}

double shannon_bits(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs) h -= xlog2x(p);
    return h;
}

}  // namespace fidres
