#include "blochflow/hermite.hpp"

#include <cmath>

#include "blochflow/errors.hpp"

namespace blochflow {

namespace {

constexpr double kInvQuarterRootPi = 0.7511255444649425;  // pi^{-1/4}

void check_args(int j, int n) {
    if (j < 0)
        throw InvalidIndexError("hermite index must be nonnegative");
    if (n < 1)
        throw InvalidDimensionError("hermite dimension must be at least 1");
}

// Unit-normalized Hermite functions psi_j(y) up to j = jmax, accumulated via
// op(j, psi_j).  psi_{j+1} = y sqrt(2/(j+1)) psi_j - sqrt(j/(j+1)) psi_{j-1}.
template <typename Op>
void psi_scan(int jmax, double y, Op&& op) {
    double prev = 0.0;
    double cur = kInvQuarterRootPi * std::exp(-0.5 * y * y);
    op(0, cur);
    for (int j = 0; j < jmax; ++j) {
        const double next =
            y * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(double(j) / (j + 1)) * prev;
        prev = cur;
        cur = next;
        op(j + 1, cur);
    }
}

}  // namespace

double hermite_phi(int j, double x, int n) {
    check_args(j, n);
    const double scale = std::sqrt(0.5 * n);  // y = x sqrt(N/2)
    double value = 0.0;
    psi_scan(j, x * scale, [&](int k, double psi) {
        if (k == j)
            value = psi;
    });
    return value * std::sqrt(scale);  // (N/2)^{1/4}
}

double level_density_r1(double e, int n) {
    check_args(0, n);
    const double scale = std::sqrt(0.5 * n);
    double sum = 0.0;
    psi_scan(n - 1, e * scale, [&](int, double psi) { sum += psi * psi; });
    return sum * scale;
}

double cluster_t2(double e1, double e2, int n) {
    check_args(0, n);
    const double scale = std::sqrt(0.5 * n);
    Eigen::VectorXd a(n), b(n);
    psi_scan(n - 1, e1 * scale, [&](int k, double psi) { a(k) = psi; });
    psi_scan(n - 1, e2 * scale, [&](int k, double psi) { b(k) = psi; });
    const double kernel = a.dot(b) * scale;
    return kernel * kernel;
}

HermiteBasis::HermiteBasis(int n, int node_count) : n_(n) {
    check_args(0, n);
    if (node_count < 2)
        throw InvalidArgumentError("basis needs at least two quadrature nodes");
    half_width_ = 2.0 + 10.0 / std::sqrt(static_cast<double>(n));
    rule_ = gauss_legendre(node_count, -half_width_, half_width_);
    phi_.resize(n, node_count);
    const double scale = std::sqrt(0.5 * n);
    const double norm = std::sqrt(scale);
    for (int q = 0; q < node_count; ++q) {
        psi_scan(n - 1, rule_.nodes[q] * scale,
                 [&](int j, double psi) { phi_(j, q) = psi * norm; });
    }
    density_ = phi_.array().square().matrix().colwise().sum().transpose();
}

}  // namespace blochflow
