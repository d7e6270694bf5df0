#include "blochflow/bessel.hpp"

#include <cmath>

namespace blochflow {

double bessel_j1(double x) {
    const double r = std::cyl_bessel_j(1.0, std::abs(x));
    return x < 0.0 ? -r : r;
}

}  // namespace blochflow
