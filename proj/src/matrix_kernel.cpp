#include "fidres/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fidres {

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

cdouble CMatrix::trace() const {
    cdouble t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::hermiticity_error() const {
    double e = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j)
            e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return e;
}

RMatrix RMatrix::identity(int dim) {
    RMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

double RMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double RMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

double RMatrix::symmetry_error() const {
    double e = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            e = std::max(e, std::abs((*this)(i, j) - (*this)(j, i)));
    return e;
}

CMatrix mul(const CMatrix& a, const CMatrix& b) {
    const int n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("mul: dimension mismatch");
    CMatrix r(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

RMatrix mul(const RMatrix& a, const RMatrix& b) {
    const int n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("mul: dimension mismatch");
    RMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

RMatrix add(const RMatrix& a, const RMatrix& b) {
    const int n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("add: dimension mismatch");
    RMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

CMatrix sub(const CMatrix& a, const CMatrix& b) {
    const int n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("sub: dimension mismatch");
    CMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    const int n = a.dim();
    double e = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e = std::max(e, std::abs(a(i, j) - b(i, j)));
    return e;
}

CMatrix to_complex(const RMatrix& m) {
    CMatrix r(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) r(i, j) = m(i, j);
    return r;
}

namespace {

void check_hermitian(const CMatrix& m) {
    const double tol = 1e-12 * std::max(1.0, m.max_abs());
    if (m.hermiticity_error() > tol)
        throw std::invalid_argument("eig_hermitian: input is not Hermitian (error " +
                                    std::to_string(m.hermiticity_error()) + ")");
}

double off_diag_norm(const CMatrix& a) {
    double s = 0.0;
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

// Closed-form 2x2 Hermitian eigendecomposition.
EigenDecomposition eig2(const CMatrix& m, bool want_vectors) {
    const double alpha = m(0, 0).real();
    const double gamma = m(1, 1).real();
    const cdouble beta = m(0, 1);
    const double b = std::abs(beta);
    const double mean = 0.5 * (alpha + gamma);
    const double disc = std::hypot(0.5 * (alpha - gamma), b);
    EigenDecomposition d;
    d.eigenvalues = {mean - disc, mean + disc};
    if (!want_vectors) return d;
    CMatrix v(2);
    if (b == 0.0) {
        if (alpha <= gamma) {
            v(0, 0) = 1.0;
            v(1, 1) = 1.0;
        } else {
            v(1, 0) = 1.0;
            v(0, 1) = 1.0;
        }
    } else {
        // (beta, lambda - alpha) solves (M - lambda)v = 0; pick the eigenvalue
        // farther from alpha for stability, then the orthogonal complement.
        const double lam = (std::abs(d.eigenvalues[0] - alpha) >= std::abs(d.eigenvalues[1] - alpha))
                               ? d.eigenvalues[0]
                               : d.eigenvalues[1];
        cdouble x = beta;
        cdouble y = lam - alpha;
        const double nrm = std::sqrt(std::norm(x) + std::norm(y));
        x /= nrm;
        y /= nrm;
        if (lam == d.eigenvalues[0]) {
            v(0, 0) = x;
            v(1, 0) = y;
            v(0, 1) = -std::conj(y);
            v(1, 1) = std::conj(x);
        } else {
            v(0, 1) = x;
            v(1, 1) = y;
            v(0, 0) = -std::conj(y);
            v(1, 0) = std::conj(x);
        }
    }
    d.eigenvectors = v;
    return d;
}

// Cyclic Jacobi for Hermitian matrices. Deterministic sweep order (p<q row
// major), quadratic convergence once the off-diagonal mass is small.
EigenDecomposition jacobi(const CMatrix& m, bool want_vectors) {
    const int n = m.dim();
    CMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix();

    double frob = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) frob += std::norm(a(i, j));
    frob = std::sqrt(frob);
    const double tol = 1e-14 * std::max(1.0, frob);

    const int max_sweeps = 64;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diag_norm(a) <= tol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double b = std::abs(apq);
                if (b == 0.0) continue;
                const cdouble phase = apq / b;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble sconj = s * std::conj(phase);
                const cdouble sphase = s * phase;

                for (int k = 0; k < n; ++k) {
                    const cdouble akp = a(k, p);
                    const cdouble akq = a(k, q);
                    a(k, p) = c * akp - sconj * akq;
                    a(k, q) = s * akp + c * std::conj(phase) * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cdouble apk = a(p, k);
                    const cdouble aqk = a(q, k);
                    a(p, k) = c * apk - sphase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                if (want_vectors) {
                    for (int k = 0; k < n; ++k) {
                        const cdouble vkp = v(k, p);
                        const cdouble vkq = v(k, q);
                        v(k, p) = c * vkp - sconj * vkq;
                        v(k, q) = s * vkp + c * std::conj(phase) * vkq;
                    }
                }
            }
        }
    }
    if (sweep == max_sweeps)
        throw std::runtime_error("eig_hermitian: Jacobi did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition d;
    d.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) d.eigenvalues[i] = a(order[i], order[i]).real();
    if (want_vectors) {
        CMatrix vs(n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
        d.eigenvectors = vs;
    }
    return d;
}

EigenDecomposition eig_impl(const CMatrix& m, bool want_vectors) {
    check_hermitian(m);
    if (m.dim() == 1) {
        EigenDecomposition d;
        d.eigenvalues = {m(0, 0).real()};
        if (want_vectors) d.eigenvectors = CMatrix::identity(1);
        return d;
    }
    if (m.dim() == 2) return eig2(m, want_vectors);
    return jacobi(m, want_vectors);
}

}  // namespace

EigenDecomposition eig_hermitian(const CMatrix& m) { return eig_impl(m, true); }

std::vector<double> eigvals_hermitian(const CMatrix& m) { return eig_impl(m, false).eigenvalues; }

CMatrix sqrt_psd(const CMatrix& m) {
    EigenDecomposition d = eig_hermitian(m);
    const int n = m.dim();
    std::vector<double> roots(n);
    for (int i = 0; i < n; ++i) {
        double lam = d.eigenvalues[i];
        if (lam < -1e-12)
            throw std::invalid_argument("sqrt_psd: matrix is not positive semidefinite (eigenvalue " +
                                        std::to_string(lam) + ")");
        roots[i] = std::sqrt(std::max(lam, 0.0));
    }
    CMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < n; ++k)
                s += d.eigenvectors(i, k) * roots[k] * std::conj(d.eigenvectors(j, k));
            r(i, j) = s;
            r(j, i) = std::conj(s);
        }
    for (int i = 0; i < n; ++i) r(i, i) = r(i, i).real();
    return r;
}

namespace {

void check_symmetric(const RMatrix& m, const char* who) {
    const double tol = 1e-10 * std::max(1.0, m.max_abs());
    if (m.symmetry_error() > tol)
        throw std::invalid_argument(std::string(who) + ": input is not symmetric");
}

}  // namespace

double det_real(const RMatrix& m) {
    const int n = m.dim();
    RMatrix a = m;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

double det_sym(const RMatrix& m) {
    check_symmetric(m, "det_sym");
    return det_real(m);
}

RMatrix inv_sym(const RMatrix& m) {
    check_symmetric(m, "inv_sym");
    const int n = m.dim();
    const double scale = std::max(1.0, m.max_abs());
    RMatrix a = m;
    RMatrix inv = RMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) <= 1e-14 * scale)
            throw std::invalid_argument("inv_sym: matrix is singular");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const double d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    // exact inverse of a symmetric matrix is symmetric; clean round-off
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = s;
            inv(j, i) = s;
        }
    return inv;
}

cdouble det_complex(const CMatrix& m) {
    const int n = m.dim();
    CMatrix a = m;
    cdouble det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == cdouble(0.0, 0.0)) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cdouble f = a(r, col) / a(col, col);
            if (f == cdouble(0.0, 0.0)) continue;
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

}  // namespace fidres
