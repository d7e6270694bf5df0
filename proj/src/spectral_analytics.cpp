#include "blochflow/spectral_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "blochflow/bessel.hpp"
#include "blochflow/errors.hpp"

namespace blochflow {

namespace {

// Form-factor levels treated as fully decayed.  b1 enters alpha squared, so
// 1e-6 bounds its alpha contribution by 1e-12; b2 enters as b2/N.
constexpr double kB1Floor = 1e-6;
constexpr double kB2Floor = 1e-8;

double b1_on(const HermiteBasis& basis, double t) {
    // R1 is even, so the imaginary part cancels exactly; integrate the cosine.
    const auto& rule = basis.rule();
    double sum = 0.0;
    for (int q = 0; q < rule.size(); ++q)
        sum += rule.weights[q] * basis.density()(q) * std::cos(rule.nodes[q] * t);
    return sum / basis.dim();
}

double b2_on(const HermiteBasis& basis, double t) {
    const auto& rule = basis.rule();
    const int nodes = rule.size();
    Eigen::VectorXd wc(nodes), ws(nodes);
    for (int q = 0; q < nodes; ++q) {
        const double phase = rule.nodes[q] * t;
        wc(q) = rule.weights[q] * std::cos(phase);
        ws(q) = rule.weights[q] * std::sin(phase);
    }
    const Eigen::MatrixXd& phi = basis.phi();
    const Eigen::MatrixXd cre = phi * wc.asDiagonal() * phi.transpose();
    const Eigen::MatrixXd cim = phi * ws.asDiagonal() * phi.transpose();
    return (cre.squaredNorm() + cim.squaredNorm()) / basis.dim();
}

// Time by which both form factors have decayed for good: b1 sits under the
// Gaussian envelope exp(-t^2 / 2N) (dead past sqrt(80 N)), while b2 keeps
// its ramp structure out to the Heisenberg time 2N and only then collapses;
// 2.75 N clears the ramp-end smearing with a wide margin at every N.
double envelope_end(int n) {
    const double nn = static_cast<double>(n);
    return std::max(std::sqrt(80.0 * nn), 2.75 * nn);
}

}  // namespace

GueSpectralModel::GueSpectralModel(int n, double t_max, double tol)
    : n_(n), t_max_(t_max), tol_(tol) {
    if (n < 1)
        throw InvalidDimensionError("GUE model needs dimension >= 1");
    if (!(t_max > 0.0))
        throw InvalidArgumentError("GUE model needs a positive time range");

    const double t_probe_max = std::min(t_max, envelope_end(n));
    const double probes[] = {0.25 * t_probe_max, 0.5 * t_probe_max,
                             0.75 * t_probe_max, t_probe_max};

    // Initial guess: enough nodes to resolve the fastest integrand
    // oscillation over the window, then double until refinement is quiet.
    const double half_width = 2.0 + 10.0 / std::sqrt(static_cast<double>(n));
    int nodes = 64;
    while (nodes < half_width * t_probe_max / 2.0)
        nodes *= 2;

    for (;; nodes *= 2) {
        if (nodes > 65536)
            throw AccuracyError("form factors: quadrature did not converge");
        HermiteBasis coarse(n, nodes);
        auto fine = std::make_shared<HermiteBasis>(n, 2 * nodes);
        double worst = 0.0;
        for (double tp : probes) {
            worst = std::max(worst, std::abs(b1_on(coarse, tp) - b1_on(*fine, tp)));
            worst = std::max(worst, std::abs(b2_on(coarse, tp) - b2_on(*fine, tp)));
        }
        if (worst < tol_) {
            basis_ = std::move(fine);
            break;
        }
        // A refinement difference at the roundoff floor cannot shrink any
        // further; climbing to the node cap would only waste minutes before
        // reporting the same thing.
        if (worst < 1e-15)
            throw AccuracyError(
                "form factors: requested tolerance is below attainable "
                "precision");
    }

    // Past the Gaussian tail both form factors are below any resolvable
    // scale and alpha sits on its floor; beyond that point the quadrature
    // would only alias.  Snap there when the window reaches that far, after
    // one sanity probe that both really have decayed.
    t_cut_ = std::numeric_limits<double>::infinity();
    const double tail = envelope_end(n);
    if (t_max_ > tail && std::abs(b1_on(*basis_, tail)) < kB1Floor &&
        b2_on(*basis_, tail) < kB2Floor)
        t_cut_ = tail;
}

double GueSpectralModel::b1(double t) const {
    return b1_on(*basis_, t);
}

double GueSpectralModel::b2(double t) const {
    return b2_on(*basis_, t);
}

FormFactors GueSpectralModel::form_factors(double t) const {
    return FormFactors{t, b1(t), b2(t)};
}

double GueSpectralModel::alpha(double t) const {
    if (n_ < 2)
        throw InvalidDimensionError("alpha needs dimension >= 2");
    const double nn = static_cast<double>(n_);
    if (std::abs(t) >= t_cut_)
        return 1.0 / (nn + 1.0);
    const FormFactors ff = form_factors(t);
    return (nn * nn * ff.b1 * ff.b1 + nn * (1.0 - ff.b2) - 1.0) / (nn * nn - 1.0);
}

FormFactors form_factors(double t, int n) {
    GueSpectralModel model(n, std::abs(t) + 1.0);
    return model.form_factors(t);
}

double alpha_gue(double t, int n) {
    if (n < 2)
        throw InvalidDimensionError("alpha needs dimension >= 2");
    GueSpectralModel model(n, std::abs(t) + 1.0);
    return model.alpha(t);
}

double alpha_gue_infinite(double t) {
    const double at = std::abs(t);
    if (at < 1e-4) {
        const double t2 = t * t;
        return 1.0 - t2 + (5.0 / 12.0) * t2 * t2;
    }
    const double r = bessel_j1(2.0 * t) / t;
    return r * r;
}

double alpha_gue_infinite(double t, int n) {
    if (n < 2)
        throw InvalidDimensionError("ramp correction needs dimension >= 2");
    const double nn = static_cast<double>(n);
    const double ramp = (nn * std::min(t / (2.0 * nn), 1.0) - 1.0) / (nn * nn - 1.0);
    return alpha_gue_infinite(t) + ramp;
}

double alpha_poisson_infinite(double t) {
    const double at = std::abs(t);
    double s;
    if (at < 1e-4) {
        const double t2 = t * t;
        s = 1.0 - (2.0 / 3.0) * t2 + (2.0 / 15.0) * t2 * t2;
    } else {
        s = std::sin(2.0 * t) / (2.0 * t);
    }
    return s * s;
}

double alpha_poisson(double t, int n) {
    if (n < 1)
        throw InvalidDimensionError("alpha needs dimension >= 1");
    const double nn = static_cast<double>(n);
    return (nn / (nn + 1.0)) * alpha_poisson_infinite(t) + 1.0 / (nn + 1.0);
}

}  // namespace blochflow
