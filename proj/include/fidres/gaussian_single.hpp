#pragma once

#include "fidres/matrix_kernel.hpp"

#include <array>

namespace fidres {

/// Squeezed thermal state parameters: squeezing factor s = e^{-2r} > 0 and
/// purity mu in (0,1]; mu = (2N+1)^{-1} with N thermal photons.
struct STS1Params {
    double s = 1.0;
    double mu = 1.0;
};

/// Mean quadrature vector plus 2x2 covariance matrix; vacuum has cm = I/2
/// and a coherent state with amplitude alpha has mean (Re alpha, Im alpha).
struct SingleModeGaussian {
    std::array<double, 2> mean{0.0, 0.0};
    RMatrix cm{RMatrix::identity(2)};
};

struct PhotonStatistics {
    double mean_n = 0.0;
    double var_n = 0.0;
    double fano = 0.0;        // meaningless when !fano_defined
    bool fano_defined = false;
};

void validate_sts1(const STS1Params& p);
void validate_single_mode(const SingleModeGaussian& g);

/// Zero-mean state with cm = diag(1/s, s)/(2 mu).
SingleModeGaussian sts1_cm(const STS1Params& p);

/// Singular Glauber-P criterion: s < mu or s > 1/mu.
bool is_nonclassical_sts1(const STS1Params& p);

/// Closed-form fidelity 1/(sqrt(Delta + delta) - sqrt(delta)) with
/// Delta = det(cm1 + cm2), delta = 4 (det cm1 - 1/4)(det cm2 - 1/4).
double fidelity_sts1(const STS1Params& a, const STS1Params& b);

/// Same covariance matrix as sts1_cm, mean displaced to (x, 0).
SingleModeGaussian displaced_sts1(const STS1Params& p, double x);

/// Fidelity between two single-mode Gaussian states:
/// exp(-d^T (cm1+cm2)^{-1} d) times the zero-mean factor, d = mean1 - mean2.
double fidelity_gaussian1(const SingleModeGaussian& g1, const SingleModeGaussian& g2);

/// First two photon-number moments from the covariance matrix and mean:
/// mean_n = (Tr cm - 1)/2 + |mean|^2,
/// var_n  = (Tr cm^2 - 1/2)/2 + 2 mean^T cm mean.
PhotonStatistics photon_stats(const SingleModeGaussian& g);

/// Fano factor < 1. Throws when the state has no photons.
bool is_subpoissonian(const SingleModeGaussian& g);

struct FockBuild {
    CMatrix rho;           // cutoff x cutoff, real entries
    double trace_deficit;  // 1 - captured trace
};

/// Truncated Fock-basis density matrix of a diagonal-CM Gaussian state with
/// real displacement, built independently of the closed forms above by
/// applying thermal, squeeze and displacement constructions at a larger
/// internal dimension. Throws "insufficient cutoff" (reporting the achieved
/// trace) when the captured trace is below 1 - 1e-8.
CMatrix fock_state(const SingleModeGaussian& g, int cutoff);

/// Like fock_state but returns the deficit instead of validating it.
FockBuild fock_state_build(const SingleModeGaussian& g, int cutoff);

/// Smallest cutoff in {30, 60, 120, ...} with trace deficit < 1e-8.
int adaptive_fock_cutoff(const SingleModeGaussian& g);

namespace detail {
/// exp(r (adag^2 - a^2)/2) in the truncated Fock basis (exact matrix
/// elements via column recursion).
RMatrix squeeze_matrix(double r, int dim);
/// exp(x (adag - a)) in the truncated Fock basis.
RMatrix displacement_matrix(double x, int dim);
}  // namespace detail

}  // namespace fidres
