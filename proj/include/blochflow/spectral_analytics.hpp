#pragma once

#include <memory>

#include "blochflow/hermite.hpp"

namespace blochflow {

// Spectral form factors at one time.  b1 is the (signed, real) Fourier
// transform of R1/N; b2 the two-level form factor (1/N) sum_{jk} |c_jk|^2
// with c_jk(t) = integral phi_j phi_k e^{-iEt}.  b1(0) = b2(0) = 1 and both
// decay to 0 at large t under the finite-N Gaussian envelope.
struct FormFactors {
    double t = 0.0;
    double b1 = 1.0;
    double b2 = 1.0;
};

// Ensemble-averaged GUE model at fixed dimension, valid on |t| <= t_max.
//
// The quadrature node count is chosen at construction by doubling until b1
// and b2 move by less than `tol` across a refinement (probed over the time
// range); failure to converge raises AccuracyError.  Beyond flat_tail_start()
// (past both the Gaussian envelope of b1 and the Heisenberg-time end of the
// b2 ramp, where both form factors are below any resolvable scale) alpha()
// returns the exact floor 1/(N+1), which also makes long-horizon sweeps
// cheap.
//
// Cost: b2 is two N x nodes GEMMs per time point; practical ceiling N ~ 512.
class GueSpectralModel {
public:
    GueSpectralModel(int n, double t_max, double tol = 1e-7);

    int dim() const { return n_; }
    double t_max() const { return t_max_; }
    int node_count() const { return basis_->node_count(); }
    double flat_tail_start() const { return t_cut_; }

    double b1(double t) const;
    double b2(double t) const;
    FormFactors form_factors(double t) const;

    // alpha(t) = (N^2 b1^2 + N (1 - b2) - 1) / (N^2 - 1); needs N >= 2.
    double alpha(double t) const;

private:
    int n_;
    double t_max_;
    double tol_;
    double t_cut_;
    std::shared_ptr<const HermiteBasis> basis_;
};

// One-shot adaptive evaluation (builds a model internally).
FormFactors form_factors(double t, int n);

// Exact finite-N ensemble average of the depolarizing radius; N >= 2.
double alpha_gue(double t, int n);

// Infinite-N limit (J1(2t)/t)^2, with the removable singularity at t = 0.
double alpha_gue_infinite(double t);

// Same plus the large-N form-factor ramp correction
// (N min(t/2N, 1) - 1)/(N^2 - 1); N >= 2.
double alpha_gue_infinite(double t, int n);

// Flat-spectrum (Poisson) average: (N/(N+1)) (sin 2t / 2t)^2 + 1/(N+1).
double alpha_poisson(double t, int n);

// Its infinite-N limit (sin 2t / 2t)^2.
double alpha_poisson_infinite(double t);

}  // namespace blochflow
