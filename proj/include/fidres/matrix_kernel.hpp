#pragma once

#include <complex>
#include <vector>

namespace fidres {

using cdouble = std::complex<double>;

/// Dense complex square matrix, row-major. Small dimensions (state-space
/// matrices are at most 4x4 in the closed-form paths; the Fock-basis oracle
/// uses larger ones).
class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(int dim) : n_(dim), a_(static_cast<size_t>(dim) * dim, cdouble(0.0, 0.0)) {}

    static CMatrix identity(int dim);

    int dim() const { return n_; }
    cdouble& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cdouble& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    const std::vector<cdouble>& data() const { return a_; }
    std::vector<cdouble>& data() { return a_; }

    cdouble trace() const;
    CMatrix adjoint() const;
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_error() const;

  private:
    int n_ = 0;
    std::vector<cdouble> a_;
};

/// Dense real square matrix, row-major (covariance matrices and friends).
class RMatrix {
  public:
    RMatrix() = default;
    explicit RMatrix(int dim) : n_(dim), a_(static_cast<size_t>(dim) * dim, 0.0) {}

    static RMatrix identity(int dim);

    int dim() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const double& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    double trace() const;
    double max_abs() const;
    /// max_ij |a_ij - a_ji|
    double symmetry_error() const;

  private:
    int n_ = 0;
    std::vector<double> a_;
};

CMatrix mul(const CMatrix& a, const CMatrix& b);
RMatrix mul(const RMatrix& a, const RMatrix& b);
RMatrix add(const RMatrix& a, const RMatrix& b);
CMatrix sub(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
CMatrix to_complex(const RMatrix& m);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    CMatrix eigenvectors;             // orthonormal columns, same order
};

/// Full eigendecomposition of a Hermitian matrix. Closed form for 2x2,
/// cyclic Jacobi sweeps otherwise. Throws std::invalid_argument if the input
/// is not Hermitian within 1e-12.
EigenDecomposition eig_hermitian(const CMatrix& m);

/// Eigenvalues only (ascending); skips eigenvector accumulation.
std::vector<double> eigvals_hermitian(const CMatrix& m);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-12, 0) are clamped to zero; anything more negative is
/// rejected with std::invalid_argument.
CMatrix sqrt_psd(const CMatrix& m);

/// Determinant of a symmetric real matrix (LU with partial pivoting).
double det_sym(const RMatrix& m);

/// Inverse of a symmetric real matrix; throws on (near-)singular input.
RMatrix inv_sym(const RMatrix& m);

/// Determinant of a general real square matrix.
double det_real(const RMatrix& m);

/// Determinant of a general complex square matrix.
cdouble det_complex(const CMatrix& m);

}  // namespace fidres
