#pragma once

#include <vector>

namespace blochflow {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

// Gauss-Legendre rule on [-1, 1]: exact for polynomials of degree 2n-1.
// Nodes by Newton iteration on P_n from the Chebyshev initial guess.
QuadratureRule gauss_legendre(int n);

// Same rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace blochflow
