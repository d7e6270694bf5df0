#include "blochflow/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "blochflow/errors.hpp"

namespace blochflow {

Spectrum Spectrum::from_energies(std::vector<double> energies) {
    if (energies.empty())
        throw InvalidDimensionError("spectrum must contain at least one level");
    for (double e : energies)
        if (!std::isfinite(e))
            throw NumericInputError("spectrum contains a non-finite energy");
    std::sort(energies.begin(), energies.end());
    return Spectrum{std::move(energies)};
}

SpectralTransform f_transform(const Spectrum& spec, double t) {
    double re = 0.0, im = 0.0;
    for (double e : spec.energies) {
        re += std::cos(e * t);
        im -= std::sin(e * t);
    }
    const double n = static_cast<double>(spec.energies.size());
    return SpectralTransform{t, {re / n, im / n}};
}

}  // namespace blochflow
