#pragma once

namespace blochflow {

// Bessel function of the first kind J1, odd-extended to x < 0.
// Absolute accuracy better than 1e-10 on |x| <= 200.
double bessel_j1(double x);

}  // namespace blochflow
