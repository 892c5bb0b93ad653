#pragma once

#include "fidres/matrix_kernel.hpp"

namespace fidres {

/// Two-mode squeezed thermal state: total mean photon number N >= 0,
/// two-mode squeezing fraction beta in [0,1] and thermal-photon split
/// gamma in [0,1] (fraction carried by mode A).
struct STS2Params {
    double n_tot = 0.0;
    double beta = 0.0;
    double gamma = 0.5;
};

/// Coefficients of the block covariance matrix (A I, C sz; C sz, B I)/2.
struct CMCoeffs {
    double a = 1.0;
    double b = 1.0;
    double c = 0.0;
};

struct SymplecticSpectrum {
    double d_minus = 0.5;
    double d_plus = 0.5;
    double dt_minus = 0.5;  // partial-transpose counterparts
    double dt_plus = 0.5;
};

void validate_sts2(const STS2Params& p);

CMCoeffs sts2_coeffs(const STS2Params& p);

/// Full 4x4 covariance matrix, mode ordering (x1, p1, x2, p2).
RMatrix sts2_cm(const CMCoeffs& m);

/// Symplectic eigenvalues from the invariants:
/// d_pm^2 = (Delta pm sqrt(Delta^2 - 4 det cm))/2 with
/// Delta = (A^2+B^2-2C^2)/4, and the partial transpose flips the sign of
/// the C^2 term. Physical states have d_minus >= 1/2.
SymplecticSpectrum symplectic_spectrum(const CMCoeffs& m);

bool is_physical_cm(const CMCoeffs& m);

/// PPT criterion: separable iff dt_minus >= 1/2.
bool is_separable(const STS2Params& p);

/// Gaussian entropic function h(x) = (x+1/2)ln(x+1/2) - (x-1/2)ln(x-1/2);
/// h(1/2) = 0 (pure mode).
double gaussian_entropy(double x);

/// Gaussian discord of the state under Gaussian measurements on mode B
/// (heterodyne-optimal for this family); zero for beta = 0, nats.
double gaussian_b_discord(const STS2Params& p);

/// Closed-form fidelity between two states of this family.
double fidelity_sts2(const STS2Params& p1, const STS2Params& p2);

/// N, with the covariance-trace identity (Tr cm - 2)/2 = N.
double mean_total_photons(const STS2Params& p);
double mean_total_photons_from_cm(const CMCoeffs& m);

}  // namespace fidres
