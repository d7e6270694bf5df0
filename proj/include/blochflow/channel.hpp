#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "blochflow/ensembles.hpp"
#include "blochflow/spectrum.hpp"

namespace blochflow {

// Pauli transfer matrix in the basis order (sigma_x, sigma_y, sigma_z, id) =
// indices (0, 1, 2, 3).  Note this puts the identity LAST, unlike the common
// convention that puts it first.  Trace preservation makes row 3 = (0,0,0,1).
struct PauliTransferMatrix {
    Eigen::Matrix4d entries = Eigen::Matrix4d::Identity();
    double time = 0.0;
};

// Initial environment state of dimension M inside qubit (x) environment,
// total dimension N = 2M.  Held as its spectral components (weight, vector)
// so rank-r states cost O(r) work downstream.
class EnvironmentSpec {
public:
    // |0><0| on the environment.
    static EnvironmentSpec projector(int dim);

    // id/M.
    static EnvironmentSpec maximally_mixed(int dim);

    // Normalized projector onto the first `rank` basis vectors.
    static EnvironmentSpec rank_projector(int dim, int rank);

    // Arbitrary density matrix; validated (hermitian, unit trace, PSD).
    static EnvironmentSpec explicit_state(ComplexMatrix rho);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(components_.size()); }
    const std::vector<std::pair<double, Eigen::VectorXcd>>& components() const {
        return components_;
    }

private:
    EnvironmentSpec(int dim,
                    std::vector<std::pair<double, Eigen::VectorXcd>> comps)
        : dim_(dim), components_(std::move(comps)) {}

    int dim_;
    std::vector<std::pair<double, Eigen::VectorXcd>> components_;
};

// U^t = W diag(e^{-i E t}) W^dagger.
ComplexMatrix evolution_operator(const ComplexMatrix& w, const Spectrum& spec,
                                 double t);

// Trace out the second (environment) factor of a 2M x 2M operator;
// the qubit is the first tensor factor, joint index i = q*M + mu.
ComplexMatrix partial_trace_env(const ComplexMatrix& state, int env_dim);

// Exact Haar-average of the radius for one concrete spectrum:
// alpha(t) = (N^2 |f(t)|^2 - 1) / (N^2 - 1); needs N >= 2.
double alpha_from_spectrum(const Spectrum& spec, double t);

// Precomputed channel for fixed (W, spectrum, environment); each ptm(t) then
// costs O(rank * N^2) instead of a dense O(N^3) evolution.  For every Pauli
// input sigma_k (extended linearly; they are not states), the map is
// tr_env[U^t (sigma_k (x) rho_env) U^t{\dagger}] projected back on sigma_j.
class ChannelEvaluator {
public:
    ChannelEvaluator(const ComplexMatrix& w, const Spectrum& spec,
                     const EnvironmentSpec& env);

    PauliTransferMatrix ptm(double t) const;
    int total_dim() const { return n_; }

private:
    int n_;
    int m_;
    std::vector<double> energies_;
    std::vector<double> weights_;
    // per component, per qubit basis state q: W^dagger (|q> (x) |v>)
    std::vector<std::array<Eigen::VectorXcd, 2>> projected_;
    ComplexMatrix w_;
};

// One-off extraction (wraps a ChannelEvaluator).
PauliTransferMatrix extract_ptm(const ComplexMatrix& w, const Spectrum& spec,
                                const EnvironmentSpec& env, double t);

struct HaarPtmStats {
    PauliTransferMatrix mean;
    Eigen::Matrix4d std_error = Eigen::Matrix4d::Zero();  // of the mean
    int n_samples = 0;
};

// Raw per-draw PTM entries for n_samples independent Haar draws of W over a
// shared time grid; slab index = sample * times.size() + time_index.  Draw i
// uses RandomStream(seed, i).  Samples may be computed in parallel; the slab
// layout is position-fixed, so downstream ordered reductions are bitwise
// reproducible for any worker count.
std::vector<Eigen::Matrix4d> haar_ptm_slabs(const Spectrum& spec,
                                            const EnvironmentSpec& env,
                                            const std::vector<double>& times,
                                            int n_samples, std::uint64_t seed,
                                            int workers = 0);

// Mean and elementwise standard error over n_samples >= 2 Haar draws.
HaarPtmStats haar_average_ptm(const Spectrum& spec, const EnvironmentSpec& env,
                              double t, int n_samples, std::uint64_t seed);

std::vector<HaarPtmStats> haar_average_ptm_sweep(
    const Spectrum& spec, const EnvironmentSpec& env,
    const std::vector<double>& times, int n_samples, std::uint64_t seed,
    int workers = 0);

}  // namespace blochflow
