#pragma once

#include <Eigen/Dense>

#include "blochflow/quadrature.hpp"

namespace blochflow {

// Oscillator eigenfunction scaled to the dimension-N spectral window:
//   phi_j(x) = e^{-N x^2/4} H_j(x sqrt(N/2)) / sqrt(2^j j! sqrt(2 pi / N)),
// evaluated through the normalized three-term recurrence (no factorials), so
// it stays stable far past j ~ 85.
double hermite_phi(int j, double x, int n);

// Mean level density R1(E) = sum_{j<N} phi_j(E)^2; integrates to N.
double level_density_r1(double e, int n);

// Two-level cluster function T2(E1, E2) = (sum_{j<N} phi_j(E1) phi_j(E2))^2.
double cluster_t2(double e1, double e2, int n);

// Gauss-Legendre grid on [-L, L], L = 2 + 10/sqrt(N), with all phi_j values
// tabulated.  The window padding covers the Gaussian tails of the phi_j, so
// the phi_j are orthonormal on the grid once the node count is high enough.
class HermiteBasis {
public:
    HermiteBasis(int n, int node_count);

    int dim() const { return n_; }
    int node_count() const { return rule_.size(); }
    double half_width() const { return half_width_; }
    const QuadratureRule& rule() const { return rule_; }

    // phi()(j, q) = phi_j(node q); n x node_count.
    const Eigen::MatrixXd& phi() const { return phi_; }

    // R1 evaluated on the nodes.
    const Eigen::VectorXd& density() const { return density_; }

private:
    int n_;
    double half_width_;
    QuadratureRule rule_;
    Eigen::MatrixXd phi_;
    Eigen::VectorXd density_;
};

}  // namespace blochflow
