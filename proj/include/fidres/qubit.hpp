#pragma once

#include "fidres/matrix_kernel.hpp"

#include <array>

namespace fidres {

/// Correlation coefficients (c1,c2,c3) of a two-qubit state that is diagonal
/// in the Bell basis. Physical iff all four eigenvalues are nonnegative.
struct PauliDiagonalCoeffs {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

/// Eigenvalues of a Pauli-diagonal state, fixed order lambda0..lambda3.
using PDEigenvalues = std::array<double, 4>;

struct BlochVector {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 0.0;
};

struct ResourceReport {
    double fidelity_to_target = 0.0;
    double negativity = 0.0;
    double discord = 0.0;
    bool separable = true;
};

/// The four affine eigenvalue combinations; also used to test physicality,
/// so unphysical inputs are allowed (they just yield negative entries).
PDEigenvalues pd_eigenvalues(const PauliDiagonalCoeffs& c);

/// min eigenvalue >= -1e-12
bool is_physical_pd(const PauliDiagonalCoeffs& c);

/// 4x4 density matrix in the computational basis; unit trace, maximally
/// mixed marginals. Throws on unphysical coefficients.
CMatrix pd_to_density_matrix(const PauliDiagonalCoeffs& c);

/// Fidelity between two Pauli-diagonal states via their shared eigenbasis:
/// (sum_k sqrt(lambda_k lambda'_k))^2.
double pd_fidelity(const PauliDiagonalCoeffs& a, const PauliDiagonalCoeffs& b);

/// General mixed-state fidelity (Tr sqrt(sqrt(r1) r2 sqrt(r1)))^2 for
/// unit-trace PSD Hermitian matrices of any (small) dimension.
double uhlmann_fidelity(const CMatrix& r1, const CMatrix& r2);

/// 0.5 * sum |eig(r1 - r2)|
double trace_distance(const CMatrix& r1, const CMatrix& r2);

/// sqrt(2 (1 - sqrt(F)))
double bures_distance(const CMatrix& r1, const CMatrix& r2);

/// Entanglement negativity -2 sum_i eta_i over the negative eigenvalues of
/// the partial transpose; normalized so a Bell state gives 1. Zero iff
/// separable for two qubits.
double negativity(const PauliDiagonalCoeffs& c);

/// Quantum discord of a Pauli-diagonal state (closed form, base-2 logs).
double pd_discord(const PauliDiagonalCoeffs& c);

/// Werner state coefficients (-cw,-cw,-cw), cw in [0,1].
PauliDiagonalCoeffs werner(double cw);

/// Fidelity of the qubit with Bloch vector r to the pure target along +z:
/// (1 + rz)/2.
double qubit_fidelity_to_zero(const BlochVector& r);

/// Closed-form single-qubit fidelity between two Bloch vectors.
double bloch_fidelity(const BlochVector& r1, const BlochVector& r2);

CMatrix bloch_to_density_matrix(const BlochVector& r);

ResourceReport pd_resource_report(const PauliDiagonalCoeffs& target, const PauliDiagonalCoeffs& c);

// 4x4 helpers shared with the test oracles
CMatrix partial_transpose_a(const CMatrix& rho);
CMatrix partial_trace_a(const CMatrix& rho);  // reduced state of subsystem B
CMatrix partial_trace_b(const CMatrix& rho);  // reduced state of subsystem A

/// -sum lambda log2 lambda with the 0 log 0 = 0 convention.
double shannon_bits(const std::vector<double>& probs);

}  // namespace fidres
