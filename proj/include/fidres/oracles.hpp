#pragma once

#include "fidres/gaussian_single.hpp"
#include "fidres/gaussian_two.hpp"
#include "fidres/qubit.hpp"

#include <array>

namespace fidres::oracles {

/// Discord by brute-force optimization over projective measurements on
/// subsystem B (181x91 angular grid plus golden-section refinement to 1e-8
/// in angle). Independent of the closed form in pd_discord.
double pd_discord_measurement(const PauliDiagonalCoeffs& c);

/// Negativity from the explicit 4x4 partial transpose and its eigenvalues.
double negativity_partial_transpose(const PauliDiagonalCoeffs& c);

/// Uhlmann fidelity evaluated on truncated Fock-basis density matrices at an
/// adaptive cutoff (trace-normalized before comparison).
double fock_fidelity(const SingleModeGaussian& g1, const SingleModeGaussian& g2);

/// Photon-number mean/variance from the Fock-basis diagonal.
PhotonStatistics fock_photon_stats(const SingleModeGaussian& g);

/// Fidelity of two two-mode squeezed vacua (beta = 1, total photons n1/n2)
/// via the pair-basis |n,n> truncation and the generic matrix fidelity.
double tmsv_fock_fidelity(double n1, double n2, int cutoff = 40);

/// Fidelity of two thermal product states via per-mode classical fidelities
/// of the geometric photon distributions.
double thermal_product_fidelity(double n1a, double n2a, double n1b, double n2b, int cutoff = 512);

/// Symplectic eigenvalues (d_minus, d_plus) of a 4x4 covariance matrix via
/// the Hermitian matrix i sqrt(cm) Omega sqrt(cm).
std::array<double, 2> symplectic_eigenvalues(const RMatrix& cm);

/// Same after the partial transpose of mode B (p2 -> -p2).
std::array<double, 2> symplectic_eigenvalues_pt(const RMatrix& cm);

}  // namespace fidres::oracles
