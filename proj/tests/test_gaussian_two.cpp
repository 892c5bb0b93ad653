#include "doctest.h"

#include "fidres/gaussian_single.hpp"
#include "fidres/gaussian_two.hpp"
#include "fidres/oracles.hpp"

#include <cmath>
#include <random>

using namespace fidres;

TEST_CASE("sts2_coeffs: vacuum, squeezed vacuum, figure targets") {
    const CMCoeffs vac = sts2_coeffs({0.0, 0.0, 0.5});
    CHECK(vac.a == doctest::Approx(1.0));
    CHECK(vac.b == doctest::Approx(1.0));
    CHECK(vac.c == doctest::Approx(0.0));

    const CMCoeffs tmsv = sts2_coeffs({1.0, 1.0, 0.5});
    CHECK(tmsv.a == doctest::Approx(2.0));
    CHECK(tmsv.b == doctest::Approx(2.0));
    CHECK(tmsv.c == doctest::Approx(std::sqrt(3.0)));
    CHECK(tmsv.a * tmsv.b - tmsv.c * tmsv.c == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(is_physical_cm(sts2_coeffs({2.5, 0.2, 0.5})));
    CHECK(is_physical_cm(sts2_coeffs({1.0, 0.13, 0.5})));

    CHECK_THROWS_AS(sts2_coeffs({-1.0, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(sts2_coeffs({1.0, 1.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(sts2_coeffs({1.0, 0.5, -0.5}), std::invalid_argument);
}

TEST_CASE("symplectic_spectrum: vacuum, squeezed vacuum, thermal products") {
    const SymplecticSpectrum vac = symplectic_spectrum(sts2_coeffs({0.0, 0.0, 0.5}));
    CHECK(vac.d_minus == doctest::Approx(0.5));
    CHECK(vac.d_plus == doctest::Approx(0.5));
    CHECK(vac.dt_minus == doctest::Approx(0.5));

    for (double n : {0.5, 1.0, 2.0, 5.0}) {
        const SymplecticSpectrum sp = symplectic_spectrum(sts2_coeffs({n, 1.0, 0.5}));
        CHECK(std::abs(sp.d_minus - 0.5) <= 1e-10);
        CHECK(std::abs(sp.d_plus - 0.5) <= 1e-10);
        CHECK(sp.dt_minus < 0.5);  // entangled for every N > 0
    }

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> un(0.0, 4.0), ug(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double n = un(rng), g = ug(rng);
        const double n1 = g * n, n2 = (1.0 - g) * n;
        const SymplecticSpectrum sp = symplectic_spectrum(sts2_coeffs({n, 0.0, g}));
        CHECK(sp.d_minus ==
              doctest::Approx((2.0 * std::min(n1, n2) + 1.0) / 2.0).epsilon(1e-10));
        CHECK(sp.d_plus == doctest::Approx((2.0 * std::max(n1, n2) + 1.0) / 2.0).epsilon(1e-10));
        CHECK(sp.dt_minus == doctest::Approx(sp.d_minus).epsilon(1e-12));
        CHECK(sp.dt_plus == doctest::Approx(sp.d_plus).epsilon(1e-12));
    }
}

TEST_CASE("symplectic_spectrum matches the Hermitian-matrix oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> un(0.0, 5.0), ub(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const CMCoeffs m = sts2_coeffs({un(rng), ub(rng), ub(rng)});
        const SymplecticSpectrum sp = symplectic_spectrum(m);
        const auto d = oracles::symplectic_eigenvalues(sts2_cm(m));
        const auto dt = oracles::symplectic_eigenvalues_pt(sts2_cm(m));
        CHECK(sp.d_minus == doctest::Approx(d[0]).epsilon(1e-9));
        CHECK(sp.d_plus == doctest::Approx(d[1]).epsilon(1e-9));
        CHECK(sp.dt_minus == doctest::Approx(dt[0]).epsilon(1e-9));
        CHECK(sp.dt_plus == doctest::Approx(dt[1]).epsilon(1e-9));
        // purity product rule
        const double det_cm = det_sym(sts2_cm(m));
        CHECK(sp.d_minus * sp.d_plus == doctest::Approx(std::sqrt(det_cm)).epsilon(1e-10));
        CHECK(sp.d_minus * sp.d_plus ==
              doctest::Approx((m.a * m.b - m.c * m.c) / 4.0).epsilon(1e-10));
    }
}

TEST_CASE("is_separable: anchors") {
    CHECK(is_separable({2.0, 0.0, 0.3}));   // thermal product
    CHECK(is_separable({1.0, 0.13, 0.5}));  // below the threshold
    CHECK_FALSE(is_separable({2.5, 0.2, 0.5}));
    CHECK_FALSE(is_separable({1.0, 1.0, 0.5}));  // squeezed vacuum
}

TEST_CASE("gaussian_b_discord: product states, anchor value, squeezed vacuum") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> un(0.01, 5.0), ug(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        CHECK(std::abs(gaussian_b_discord({un(rng), 0.0, ug(rng)})) <= 1e-12);
    }

    CHECK(gaussian_b_discord({2.0, 0.2, 0.5}) == doctest::Approx(0.22).epsilon(0.05));

    // squeezed vacuum: discord equals the entropy of the reduced thermal state
    for (double n : {0.5, 1.0, 2.0}) {
        const double d = gaussian_b_discord({n, 1.0, 0.5});
        const double reduced = gaussian_entropy((n + 1.0) / 2.0);  // thermal n/2 per mode
        CHECK(d == doctest::Approx(reduced).epsilon(1e-10));
    }

    // nonnegative over the parameter box
    std::uniform_real_distribution<double> ub(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double d = gaussian_b_discord({un(rng), ub(rng), ub(rng)});
        CHECK(d >= 0.0);
    }
}

TEST_CASE("fidelity_sts2: identical states and thermal factorization") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> un(0.0, 4.0), ub(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const STS2Params p{un(rng), ub(rng), ub(rng)};
        CHECK(fidelity_sts2(p, p) == doctest::Approx(1.0).epsilon(1e-10));
    }

    std::uniform_real_distribution<double> upos(0.05, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double n1a = upos(rng), n2a = upos(rng), n1b = upos(rng), n2b = upos(rng);
        const STS2Params pa{n1a + n2a, 0.0, n1a / (n1a + n2a)};
        const STS2Params pb{n1b + n2b, 0.0, n1b / (n1b + n2b)};
        const double two_mode = fidelity_sts2(pa, pb);
        const double per_mode =
            fidelity_sts1({1.0, 1.0 / (2.0 * n1a + 1.0)}, {1.0, 1.0 / (2.0 * n1b + 1.0)}) *
            fidelity_sts1({1.0, 1.0 / (2.0 * n2a + 1.0)}, {1.0, 1.0 / (2.0 * n2b + 1.0)});
        CHECK(std::abs(two_mode - per_mode) <= 1e-10);
        CHECK(std::abs(two_mode - oracles::thermal_product_fidelity(n1a, n2a, n1b, n2b)) <= 1e-8);
    }
}

TEST_CASE("fidelity_sts2 vs two-mode squeezed-vacuum Fock oracle") {
    const double f = fidelity_sts2({1.0, 1.0, 0.5}, {1.05, 1.0, 0.5});
    CHECK(std::abs(f - oracles::tmsv_fock_fidelity(1.0, 1.05, 40)) <= 1e-5);
    const double f2 = fidelity_sts2({2.0, 1.0, 0.5}, {2.3, 1.0, 0.5});
    CHECK(std::abs(f2 - oracles::tmsv_fock_fidelity(2.0, 2.3, 60)) <= 1e-5);
}

TEST_CASE("fidelity_sts2: symmetry and local monotonicity") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> un(0.1, 4.0), ub(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
        const STS2Params p{un(rng), ub(rng), ub(rng)};
        const STS2Params q{un(rng), ub(rng), ub(rng)};
        CHECK(fidelity_sts2(p, q) == doctest::Approx(fidelity_sts2(q, p)).epsilon(1e-12));
    }

    // monotone decrease along each axis away from the target
    const STS2Params t{2.0, 0.3, 0.5};
    for (int axis = 0; axis < 3; ++axis) {
        double prev = 1.0;
        for (int k = 1; k <= 5; ++k) {
            STS2Params q = t;
            const double step = 0.01 * k;
            if (axis == 0) q.n_tot += step;
            if (axis == 1) q.beta += step;
            if (axis == 2) q.gamma += step;
            const double f = fidelity_sts2(t, q);
            CHECK(f < prev);
            prev = f;
        }
    }
}

TEST_CASE("gamma-swap symmetry") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> un(0.05, 5.0), ub(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const STS2Params p{un(rng), ub(rng), ub(rng)};
        const STS2Params ps{p.n_tot, p.beta, 1.0 - p.gamma};
        const CMCoeffs m = sts2_coeffs(p);
        const CMCoeffs ms = sts2_coeffs(ps);
        CHECK(ms.a == doctest::Approx(m.b).epsilon(1e-12));
        CHECK(ms.b == doctest::Approx(m.a).epsilon(1e-12));
        CHECK(ms.c == doctest::Approx(m.c).epsilon(1e-12));
        CHECK(symplectic_spectrum(ms).dt_minus ==
              doctest::Approx(symplectic_spectrum(m).dt_minus).epsilon(1e-12));
        CHECK(is_separable(p) == is_separable(ps));

        const STS2Params q{un(rng), ub(rng), ub(rng)};
        const STS2Params qs{q.n_tot, q.beta, 1.0 - q.gamma};
        CHECK(fidelity_sts2(p, q) == doctest::Approx(fidelity_sts2(ps, qs)).epsilon(1e-11));
    }
}

TEST_CASE("mean_total_photons and the covariance-trace identity") {
    CHECK(mean_total_photons({0.0, 0.0, 0.5}) == doctest::Approx(0.0));
    CHECK(mean_total_photons({2.0, 0.2, 0.5}) == doctest::Approx(2.0));

    const CMCoeffs tmsv = sts2_coeffs({1.0, 1.0, 0.5});
    CHECK(mean_total_photons_from_cm(tmsv) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> un(0.0, 5.0), ub(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const STS2Params p{un(rng), ub(rng), ub(rng)};
        CHECK(mean_total_photons_from_cm(sts2_coeffs(p)) ==
              doctest::Approx(p.n_tot).epsilon(1e-10));
    }
}
