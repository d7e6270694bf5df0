#include <doctest.h>

#include <cmath>

#include "blochflow/ensembles.hpp"
#include "blochflow/errors.hpp"
#include "blochflow/rng.hpp"
#include "test_helpers.hpp"

using namespace blochflow;
namespace bt = blochflow::testing;

TEST_SUITE("ensembles") {

TEST_CASE("gue draws are hermitian, reproducible, entrywise calibrated") {
    const ComplexMatrix h = sample_gue(32, 99, 5);
    CHECK(is_hermitian(h));
    CHECK((h - sample_gue(32, 99, 5)).norm() == 0.0);
    CHECK((h - sample_gue(32, 99, 6)).norm() > 1e-3);

    const int n = 16;
    std::vector<double> diag, offre, offim;
    for (int s = 0; s < 400; ++s) {
        const ComplexMatrix m = sample_gue(n, 123, static_cast<std::uint64_t>(s));
        for (int i = 0; i < n; ++i)
            diag.push_back(m(i, i).real());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                offre.push_back(m(i, j).real());
                offim.push_back(m(i, j).imag());
            }
    }
    CHECK(bt::variance_of(diag) == doctest::Approx(1.0 / n).epsilon(0.1));
    CHECK(bt::variance_of(offre) == doctest::Approx(0.5 / n).epsilon(0.05));
    CHECK(bt::variance_of(offim) == doctest::Approx(0.5 / n).epsilon(0.05));
    CHECK(std::abs(bt::mean_of(diag)) < 0.01);
}

TEST_CASE("gue bulk spectrum spans [-2,2] with unit variance") {
    std::vector<double> levels;
    double extreme = 0.0;
    for (int s = 0; s < 40; ++s) {
        const EigenSystem sys =
            eigen_decompose(sample_gue(64, 7, static_cast<std::uint64_t>(s)));
        for (double e : sys.spectrum.energies) {
            levels.push_back(e);
            extreme = std::max(extreme, std::abs(e));
        }
    }
    CHECK(bt::mean_of(levels) == doctest::Approx(0.0).epsilon(1.0).scale(0.05));
    CHECK(bt::variance_of(levels) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(extreme < 2.5);   // edge plus finite-size tail
    CHECK(extreme > 1.9);
}

TEST_CASE("haar draws are unitary and first-column overlap is Beta(1,N-1)") {
    const int n = 24;
    CHECK(is_unitary(sample_haar(n, 3, 0)));
    CHECK((sample_haar(n, 3, 4) - sample_haar(n, 3, 4)).norm() == 0.0);

    std::vector<double> overlap;
    for (int s = 0; s < 3000; ++s) {
        const ComplexMatrix u = sample_haar(n, 2024, static_cast<std::uint64_t>(s));
        overlap.push_back(std::norm(u(0, 0)));
    }
    // |<0|U|0>|^2 ~ Beta(1, N-1) for Haar U.
    const auto cdf = [n](double x) {
        return 1.0 - std::pow(1.0 - x, n - 1);
    };
    CHECK(bt::ks_test(overlap, cdf) > 0.01);
}

TEST_CASE("haar measure is invariant under left multiplication") {
    const int n = 8;
    const ComplexMatrix v = sample_haar(n, 555, 0);
    std::vector<double> plain, rotated;
    for (int s = 1; s <= 2000; ++s) {
        const ComplexMatrix u = sample_haar(n, 31, static_cast<std::uint64_t>(s));
        const ComplexMatrix w = sample_haar(n, 32, static_cast<std::uint64_t>(s));
        plain.push_back(std::norm(u(1, 2)));
        rotated.push_back(std::norm((v * w)(1, 2)));
    }
    CHECK(bt::ks_test_two(plain, rotated) > 0.01);
}

TEST_CASE("eigen_decompose reconstructs and orders") {
    const ComplexMatrix h = sample_gue(48, 17, 0);
    const EigenSystem sys = eigen_decompose(h);
    CHECK(is_unitary(sys.vectors));
    ComplexMatrix rebuilt = ComplexMatrix::Zero(48, 48);
    for (int j = 0; j < 48; ++j)
        rebuilt += sys.spectrum.energies[static_cast<std::size_t>(j)] *
                   sys.vectors.col(j) * sys.vectors.col(j).adjoint();
    CHECK((rebuilt - h).norm() < 1e-10 * 48);
    CHECK(std::is_sorted(sys.spectrum.energies.begin(),
                         sys.spectrum.energies.end()));
}

TEST_CASE("eigen_decompose rejects bad input") {
    ComplexMatrix bad = ComplexMatrix::Zero(3, 3);
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eigen_decompose(bad), NumericInputError);
    CHECK_THROWS_AS(eigen_decompose(ComplexMatrix::Zero(2, 3)),
                    DimensionMismatchError);
}

TEST_CASE("poisson spectrum is uniform on [-2,2]") {
    const Spectrum one = sample_poisson_spectrum(64, 5, 2);
    CHECK(std::is_sorted(one.energies.begin(), one.energies.end()));
    std::vector<double> levels;
    for (int s = 0; s < 300; ++s) {
        const Spectrum sp =
            sample_poisson_spectrum(64, 5, static_cast<std::uint64_t>(s));
        for (double e : sp.energies) {
            REQUIRE(e >= -2.0);
            REQUIRE(e <= 2.0);
            levels.push_back(e);
        }
    }
    CHECK(bt::ks_test(levels, [](double x) { return (x + 2.0) / 4.0; }) > 0.01);
    CHECK(bt::variance_of(levels) == doctest::Approx(4.0 / 3.0).epsilon(0.02));
}

TEST_CASE("spectrum validation") {
    CHECK_THROWS_AS(Spectrum::from_energies({}), InvalidDimensionError);
    CHECK_THROWS_AS(
        Spectrum::from_energies({1.0, std::numeric_limits<double>::infinity()}),
        NumericInputError);
    const Spectrum s = Spectrum::from_energies({2.0, -1.0, 0.5});
    CHECK(s.energies == std::vector<double>{-1.0, 0.5, 2.0});
}

TEST_CASE("f_transform is bounded and equals 1 at t=0") {
    RandomStream rng(88, 0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> es;
        for (int j = 0; j < 12; ++j)
            es.push_back(4.0 * rng.uniform() - 2.0);
        const Spectrum sp = Spectrum::from_energies(std::move(es));
        CHECK(f_transform(sp, 0.0).value == std::complex<double>(1.0, 0.0));
        for (double t : {0.3, 1.7, 9.2}) {
            CHECK(std::abs(f_transform(sp, t).value) <= 1.0 + 1e-12);
        }
    }
}

}  // TEST_SUITE
