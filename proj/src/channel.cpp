#include "blochflow/channel.hpp"

#include <cmath>
#include <complex>

#include "blochflow/errors.hpp"
#include "blochflow/parallel.hpp"

namespace blochflow {

namespace {

using Complex = std::complex<double>;

const std::array<Eigen::Matrix2cd, 4>& pauli_basis() {
    static const std::array<Eigen::Matrix2cd, 4> sigma = [] {
        std::array<Eigen::Matrix2cd, 4> s;
        const Complex i(0.0, 1.0);
        s[0] << 0, 1, 1, 0;
        s[1] << 0, -i, i, 0;
        s[2] << 1, 0, 0, -1;
        s[3] << 1, 0, 0, 1;
        return s;
    }();
    return sigma;
}

void check_env_dims(const ComplexMatrix& w, const Spectrum& spec,
                    const EnvironmentSpec& env) {
    const int n = spec.dim();
    if (w.rows() != w.cols() || w.rows() != n)
        throw DimensionMismatchError("unitary and spectrum dimensions differ");
    if (n != 2 * env.dim())
        throw DimensionMismatchError(
            "total dimension must be twice the environment dimension");
    if (n < 2)
        throw InvalidDimensionError("channel needs total dimension >= 2");
}

}  // namespace

EnvironmentSpec EnvironmentSpec::projector(int dim) {
    return rank_projector(dim, 1);
}

EnvironmentSpec EnvironmentSpec::maximally_mixed(int dim) {
    return rank_projector(dim, dim);
}

EnvironmentSpec EnvironmentSpec::rank_projector(int dim, int rank) {
    if (dim < 1)
        throw InvalidDimensionError("environment dimension must be >= 1");
    if (rank < 1 || rank > dim)
        throw InvalidArgumentError("environment rank must be in [1, dim]");
    std::vector<std::pair<double, Eigen::VectorXcd>> comps;
    comps.reserve(rank);
    for (int mu = 0; mu < rank; ++mu) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v(mu) = 1.0;
        comps.emplace_back(1.0 / rank, std::move(v));
    }
    return EnvironmentSpec(dim, std::move(comps));
}

EnvironmentSpec EnvironmentSpec::explicit_state(ComplexMatrix rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 1)
        throw InvalidDimensionError("environment state must be square");
    if (!is_hermitian(rho, 1e-12) ||
        std::abs(rho.trace().real() - 1.0) > 1e-12 ||
        std::abs(rho.trace().imag()) > 1e-12)
        throw InvalidArgumentError("environment state not normalized");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
    if (solver.info() != Eigen::Success)
        throw AccuracyError("environment state eigendecomposition failed");
    std::vector<std::pair<double, Eigen::VectorXcd>> comps;
    for (int k = 0; k < rho.rows(); ++k) {
        const double w = solver.eigenvalues()(k);
        if (w < -1e-10)
            throw InvalidArgumentError("environment state not normalized");
        if (w > 1e-14)
            comps.emplace_back(w, solver.eigenvectors().col(k));
    }
    return EnvironmentSpec(static_cast<int>(rho.rows()), std::move(comps));
}

ComplexMatrix evolution_operator(const ComplexMatrix& w, const Spectrum& spec,
                                 double t) {
    if (w.rows() != w.cols() || w.rows() != spec.dim())
        throw DimensionMismatchError("unitary and spectrum dimensions differ");
    Eigen::VectorXcd phase(spec.dim());
    for (int j = 0; j < spec.dim(); ++j) {
        const double a = spec.energies[j] * t;
        phase(j) = Complex(std::cos(a), -std::sin(a));
    }
    return w * phase.asDiagonal() * w.adjoint();
}

ComplexMatrix partial_trace_env(const ComplexMatrix& state, int env_dim) {
    if (env_dim < 1)
        throw InvalidDimensionError("environment dimension must be >= 1");
    const int d = static_cast<int>(state.rows());
    if (state.cols() != d || d != 2 * env_dim)
        throw DimensionMismatchError(
            "state dimension must be twice the environment dimension");
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int q = 0; q < 2; ++q)
        for (int qp = 0; qp < 2; ++qp)
            for (int mu = 0; mu < env_dim; ++mu)
                out(q, qp) += state(q * env_dim + mu, qp * env_dim + mu);
    return out;
}

double alpha_from_spectrum(const Spectrum& spec, double t) {
    const double n = spec.dim();
    if (spec.dim() < 2)
        throw InvalidDimensionError("alpha needs dimension >= 2");
    const double f2 = std::norm(f_transform(spec, t).value);
    return (n * n * f2 - 1.0) / (n * n - 1.0);
}

ChannelEvaluator::ChannelEvaluator(const ComplexMatrix& w, const Spectrum& spec,
                                   const EnvironmentSpec& env)
    : n_(spec.dim()), m_(env.dim()), energies_(spec.energies), w_(w) {
    check_env_dims(w, spec, env);
    projected_.reserve(env.components().size());
    for (const auto& [weight, v] : env.components()) {
        weights_.push_back(weight);
        std::array<Eigen::VectorXcd, 2> pq;
        for (int q = 0; q < 2; ++q) {
            Eigen::VectorXcd embedded = Eigen::VectorXcd::Zero(n_);
            embedded.segment(q * m_, m_) = v;
            pq[q] = w_.adjoint() * embedded;
        }
        projected_.push_back(std::move(pq));
    }
}

PauliTransferMatrix ChannelEvaluator::ptm(double t) const {
    Eigen::VectorXcd phase(n_);
    for (int j = 0; j < n_; ++j) {
        const double a = energies_[j] * t;
        phase(j) = Complex(std::cos(a), -std::sin(a));
    }

    // R[q][q'] = tr_env[(U|q,v>)(U|q',v>)^dagger] summed over components.
    std::array<std::array<Eigen::Matrix2cd, 2>, 2> r;
    for (auto& row : r)
        for (auto& blk : row)
            blk.setZero();
    Eigen::VectorXcd u[2];
    for (std::size_t c = 0; c < projected_.size(); ++c) {
        for (int q = 0; q < 2; ++q)
            u[q] = w_ * phase.cwiseProduct(projected_[c][q]).eval();
        for (int q = 0; q < 2; ++q)
            for (int qp = 0; qp < 2; ++qp)
                for (int a = 0; a < 2; ++a)
                    for (int ap = 0; ap < 2; ++ap)
                        r[q][qp](a, ap) += weights_[c] *
                            u[qp].segment(ap * m_, m_).dot(u[q].segment(a * m_, m_));
    }

    const auto& sigma = pauli_basis();
    PauliTransferMatrix out;
    out.time = t;
    for (int k = 0; k < 4; ++k) {
        Eigen::Matrix2cd mapped = Eigen::Matrix2cd::Zero();
        for (int q = 0; q < 2; ++q)
            for (int qp = 0; qp < 2; ++qp)
                mapped += sigma[k](q, qp) * r[q][qp];
        for (int j = 0; j < 4; ++j)
            out.entries(j, k) = 0.5 * (sigma[j] * mapped).trace().real();
    }
    return out;
}

PauliTransferMatrix extract_ptm(const ComplexMatrix& w, const Spectrum& spec,
                                const EnvironmentSpec& env, double t) {
    return ChannelEvaluator(w, spec, env).ptm(t);
}

std::vector<Eigen::Matrix4d> haar_ptm_slabs(const Spectrum& spec,
                                            const EnvironmentSpec& env,
                                            const std::vector<double>& times,
                                            int n_samples, std::uint64_t seed,
                                            int workers) {
    if (n_samples < 1)
        throw InvalidArgumentError("need at least one sample");
    const std::size_t nt = times.size();
    std::vector<Eigen::Matrix4d> slabs(static_cast<std::size_t>(n_samples) * nt);
    parallel_for(static_cast<std::size_t>(n_samples), workers, [&](std::size_t i) {
        const ComplexMatrix w = sample_haar(spec.dim(), seed, i);
        const ChannelEvaluator evaluator(w, spec, env);
        for (std::size_t k = 0; k < nt; ++k)
            slabs[i * nt + k] = evaluator.ptm(times[k]).entries;
    });
    return slabs;
}

std::vector<HaarPtmStats> haar_average_ptm_sweep(
    const Spectrum& spec, const EnvironmentSpec& env,
    const std::vector<double>& times, int n_samples, std::uint64_t seed,
    int workers) {
    if (n_samples < 2)
        throw InvalidArgumentError(
            "standard error needs at least two samples");
    const std::vector<Eigen::Matrix4d> slabs =
        haar_ptm_slabs(spec, env, times, n_samples, seed, workers);
    const std::size_t nt = times.size();
    std::vector<HaarPtmStats> stats(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        Eigen::Matrix4d mean = Eigen::Matrix4d::Zero();
        for (int i = 0; i < n_samples; ++i)
            mean += slabs[static_cast<std::size_t>(i) * nt + k];
        mean /= n_samples;
        Eigen::Matrix4d var = Eigen::Matrix4d::Zero();
        for (int i = 0; i < n_samples; ++i) {
            const Eigen::Matrix4d d =
                slabs[static_cast<std::size_t>(i) * nt + k] - mean;
            var += d.cwiseProduct(d);
        }
        var /= (n_samples - 1);
        stats[k].mean.entries = mean;
        stats[k].mean.time = times[k];
        stats[k].std_error = (var / n_samples).cwiseSqrt();
        stats[k].n_samples = n_samples;
    }
    return stats;
}

HaarPtmStats haar_average_ptm(const Spectrum& spec, const EnvironmentSpec& env,
                              double t, int n_samples, std::uint64_t seed) {
    return haar_average_ptm_sweep(spec, env, {t}, n_samples, seed).front();
}

}  // namespace blochflow
