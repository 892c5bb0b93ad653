#pragma once

#include "fidres/qubit.hpp"

#include <random>

namespace testutil {

inline fidres::PauliDiagonalCoeffs random_pd(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        const fidres::PauliDiagonalCoeffs c{u(rng), u(rng), u(rng)};
        if (fidres::is_physical_pd(c)) return c;
    }
}

inline fidres::CMatrix random_density(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    fidres::CMatrix a(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = fidres::cdouble(g(rng), g(rng));
    fidres::CMatrix rho = fidres::mul(a, a.adjoint());
    const double tr = rho.trace().real();
    for (auto& v : rho.data()) v /= tr;
    return rho;
}

inline std::vector<fidres::cdouble> random_pure(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<fidres::cdouble> psi(dim);
    double norm = 0.0;
    for (auto& v : psi) {
        v = fidres::cdouble(g(rng), g(rng));
        norm += std::norm(v);
    }
    norm = std::sqrt(norm);
    for (auto& v : psi) v /= norm;
    return psi;
}

inline fidres::CMatrix outer(const std::vector<fidres::cdouble>& psi) {
    fidres::CMatrix m(static_cast<int>(psi.size()));
    for (size_t i = 0; i < psi.size(); ++i)
        for (size_t j = 0; j < psi.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = psi[i] * std::conj(psi[j]);
    return m;
}

}  // namespace testutil
