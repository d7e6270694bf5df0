#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "blochflow/bessel.hpp"

using namespace blochflow;

TEST_SUITE("bessel") {

TEST_CASE("reference values") {
    // High-precision J1 references.
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(bessel_j1(0.5) == doctest::Approx(0.2422684576748739).epsilon(1e-14));
    CHECK(bessel_j1(1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-14));
    CHECK(bessel_j1(2.0) == doctest::Approx(0.5767248077568734).epsilon(1e-14));
    CHECK(bessel_j1(5.0) == doctest::Approx(-0.3275791375914652).epsilon(1e-13));
    CHECK(bessel_j1(20.0) == doctest::Approx(0.0668331241757062).epsilon(1e-11));
}

TEST_CASE("odd parity") {
    for (double x : {0.3, 1.7, 6.2, 40.0})
        CHECK(bessel_j1(-x) == -bessel_j1(x));
}

TEST_CASE("first zero sits at 3.8317...") {
    const double z = 3.831705970207512;
    CHECK(std::abs(bessel_j1(z)) < 1e-12);
    CHECK(bessel_j1(z - 0.01) > 0.0);
    CHECK(bessel_j1(z + 0.01) < 0.0);
}

TEST_CASE("small-argument series J1(x) ~ x/2 - x^3/16") {
    for (double x : {1e-6, 1e-4, 1e-2}) {
        const double series = x / 2.0 - x * x * x / 16.0;
        CHECK(bessel_j1(x) == doctest::Approx(series).epsilon(1e-9));
    }
}

TEST_CASE("satisfies the Bessel ODE x^2 y'' + x y' + (x^2 - 1) y = 0") {
    for (double x : {2.0, 7.0, 15.0}) {
        const double h = 1e-4;
        const double y = bessel_j1(x);
        const double yp = (bessel_j1(x + h) - bessel_j1(x - h)) / (2 * h);
        const double ypp =
            (bessel_j1(x + h) - 2 * y + bessel_j1(x - h)) / (h * h);
        CHECK(x * x * ypp + x * yp + (x * x - 1.0) * y ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-5));
    }
}

}  // TEST_SUITE
