#pragma once

#include <complex>
#include <vector>

namespace blochflow {

// Energy spectrum in the natural units of the problem: the dimensionless
// scale is fixed so a chaotic bulk spectrum spans [-2, 2] (span 4), which
// makes the Heisenberg time equal to 2N.
struct Spectrum {
    std::vector<double> energies;  // sorted ascending, all finite

    int dim() const { return static_cast<int>(energies.size()); }

    // Sorts and validates: nonempty, all entries finite.
    static Spectrum from_energies(std::vector<double> energies);
};

// Value of f(t) = (1/N) sum_j exp(-i E_j t).
struct SpectralTransform {
    double t = 0.0;
    std::complex<double> value{1.0, 0.0};
};

// |value| <= 1 always, with equality at t = 0.
SpectralTransform f_transform(const Spectrum& spec, double t);

}  // namespace blochflow
