#include <doctest.h>

#include <cmath>

#include "blochflow/bessel.hpp"
#include "blochflow/channel.hpp"
#include "blochflow/ensembles.hpp"
#include "blochflow/errors.hpp"
#include "blochflow/spectral_analytics.hpp"
#include "test_helpers.hpp"

using namespace blochflow;
namespace bt = blochflow::testing;

TEST_SUITE("spectral") {

TEST_CASE("form factors start at 1 and alpha at 1") {
    for (int n : {2, 4, 8, 32}) {
        const GueSpectralModel model(n, 10.0);
        CHECK(model.b1(0.0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(model.b2(0.0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(model.alpha(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("N=1 form factor is the pure gaussian e^{-t^2/2}") {
    const GueSpectralModel model(1, 8.0);
    for (double t : {0.3, 1.3, 2.9})
        CHECK(model.b1(t) == doctest::Approx(std::exp(-t * t / 2)).epsilon(1e-9));
}

TEST_CASE("pinned finite-N values") {
    // Fixed-point values computed from the determinantal kernel with an
    // independent high-order quadrature.
    const GueSpectralModel m4(4, 12.0);
    CHECK(m4.b1(0.5) == doctest::Approx(0.880250792855).epsilon(1e-9));
    CHECK(m4.b2(0.5) == doctest::Approx(0.944694582957).epsilon(1e-9));
    CHECK(m4.b1(2.41) == doctest::Approx(-0.121639935726).epsilon(1e-8));
    CHECK(m4.b2(2.41) == doctest::Approx(0.624042402067).epsilon(1e-8));

    const GueSpectralModel m8(8, 20.0);
    CHECK(m8.alpha(5.0) == doctest::Approx(0.0339684539156).epsilon(1e-8));
    CHECK(m8.alpha(10.0) == doctest::Approx(0.0785053382091).epsilon(1e-8));
    CHECK(m8.alpha(15.0) == doctest::Approx(0.1092494141495).epsilon(1e-8));
}

TEST_CASE("form factors are even in t") {
    const GueSpectralModel model(6, 8.0);
    for (double t : {0.7, 3.1}) {
        CHECK(model.b1(-t) == doctest::Approx(model.b1(t)).epsilon(1e-12));
        CHECK(model.b2(-t) == doctest::Approx(model.b2(t)).epsilon(1e-12));
    }
}

TEST_CASE("alpha settles exactly on the floor 1/(N+1)") {
    for (int n : {4, 8, 16})
        CHECK(alpha_gue(10.0 * n, n) == 1.0 / (n + 1));
    const GueSpectralModel model(8, 500.0);
    CHECK(model.flat_tail_start() == doctest::Approx(std::sqrt(80.0 * 8)));
    // Continuity across the snap point.
    const double tc = model.flat_tail_start();
    CHECK(std::abs(model.alpha(tc - 1e-6) - 1.0 / 9.0) < 1e-7);
    CHECK(model.alpha(tc + 1e-6) == 1.0 / 9.0);
}

TEST_CASE("large-N form factor approaches J1(2t)/t") {
    const GueSpectralModel model(64, 5.0);
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        const double limit = bessel_j1(2.0 * t) / t;
        CHECK(model.b1(t) == doctest::Approx(limit).scale(1.0).epsilon(0.02));
    }
}

TEST_CASE("infinite-N alpha: values, series window, ramp correction") {
    CHECK(alpha_gue_infinite(0.0) == 1.0);
    CHECK(alpha_gue_infinite(1.0) == doctest::Approx(0.332611503882).epsilon(1e-10));
    const double j = bessel_j1(5.0) / 2.5;
    CHECK(alpha_gue_infinite(2.5) == doctest::Approx(j * j).epsilon(1e-12));
    // Series and direct evaluation agree across the switchover.
    CHECK(alpha_gue_infinite(0.99e-4) ==
          doctest::Approx(alpha_gue_infinite(1.01e-4)).epsilon(1e-8));
    // Ramp correction: exact 1 at t=0 is given up for the right floor.
    const int n = 32;
    CHECK(alpha_gue_infinite(0.0, n) ==
          doctest::Approx(1.0 - 1.0 / (n * n - 1.0)).epsilon(1e-12));
    CHECK(alpha_gue_infinite(3.0 * n, n) ==
          doctest::Approx(alpha_gue_infinite(3.0 * n) + 1.0 / (n + 1.0))
              .epsilon(1e-12));
    // Against the exact finite-N curve the correction is O(1/N^2).
    const GueSpectralModel model(n, 8.0);
    for (double t : {0.5, 2.0, 6.0})
        CHECK(std::abs(alpha_gue_infinite(t, n) - model.alpha(t)) <
              10.0 / (n * n));
}

TEST_CASE("poisson alpha: closed form, floor, infinite limit") {
    CHECK(alpha_poisson(0.0, 7) == 1.0);
    // sin(2t) vanishes at t = pi/2, so alpha touches the floor exactly.
    const double half_pi = 1.57079632679489662;
    CHECK(alpha_poisson(half_pi, 7) == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
    CHECK(alpha_poisson_infinite(half_pi) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(alpha_poisson_infinite(0.99e-4) ==
          doctest::Approx(alpha_poisson_infinite(1.01e-4)).epsilon(1e-8));
    // Large N converges to the infinite-N curve.
    CHECK(alpha_poisson(1.3, 100000) ==
          doctest::Approx(alpha_poisson_infinite(1.3)).scale(1.0).epsilon(1e-4));
}

TEST_CASE("poisson alpha equals the spectrum-ensemble Haar average") {
    const int n = 8;
    const double t = 1.1;
    std::vector<double> alphas;
    for (int s = 0; s < 2000; ++s)
        alphas.push_back(alpha_from_spectrum(
            sample_poisson_spectrum(n, 77, static_cast<std::uint64_t>(s)), t));
    const double se = std::sqrt(bt::variance_of(alphas) / alphas.size());
    CHECK(std::abs(bt::mean_of(alphas) - alpha_poisson(t, n)) < 4.0 * se);
}

TEST_CASE("quadrature refinement failure raises") {
    CHECK_THROWS_AS(GueSpectralModel(8, 500.0, 1e-16), AccuracyError);
}

TEST_CASE("dimension guards") {
    CHECK_THROWS_AS(GueSpectralModel(0, 1.0), InvalidDimensionError);
    CHECK_THROWS_AS(GueSpectralModel(4, -1.0), InvalidArgumentError);
    CHECK_THROWS_AS(GueSpectralModel(1, 10.0).alpha(0.5),
                    InvalidDimensionError);
    CHECK_THROWS_AS(alpha_gue(1.0, 1), InvalidDimensionError);
    CHECK_THROWS_AS(alpha_poisson(1.0, 0), InvalidDimensionError);
    CHECK_THROWS_AS(alpha_gue_infinite(1.0, 1), InvalidDimensionError);
}

}  // TEST_SUITE
