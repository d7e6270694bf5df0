#include "blochflow/ensembles.hpp"

#include <cmath>
#include <complex>

#include "blochflow/errors.hpp"
#include "blochflow/rng.hpp"

namespace blochflow {

namespace {

void require_positive_dim(int dim) {
    if (dim < 1)
        throw InvalidDimensionError("dimension must be at least 1");
}

}  // namespace

ComplexMatrix sample_gue(int dim, std::uint64_t seed, std::uint64_t stream) {
    require_positive_dim(dim);
    RandomStream rng(seed, stream);
    const double diag_sd = 1.0 / std::sqrt(static_cast<double>(dim));
    const double off_sd = 1.0 / std::sqrt(2.0 * dim);
    ComplexMatrix h(dim, dim);
    for (int i = 0; i < dim; ++i)
        h(i, i) = diag_sd * rng.gaussian();
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const std::complex<double> z = off_sd * rng.gaussian_complex();
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

ComplexMatrix sample_haar(int dim, std::uint64_t seed, std::uint64_t stream) {
    require_positive_dim(dim);
    RandomStream rng(seed, stream);
    ComplexMatrix z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            z(i, j) = rng.gaussian_complex();
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const std::complex<double> d = r(j, j);
        const double m = std::abs(d);
        q.col(j) *= (m > 0.0) ? d / m : std::complex<double>(1.0, 0.0);
    }
    return q;
}

Spectrum sample_poisson_spectrum(int dim, std::uint64_t seed,
                                 std::uint64_t stream) {
    require_positive_dim(dim);
    RandomStream rng(seed, stream);
    std::vector<double> energies(dim);
    for (double& e : energies)
        e = -2.0 + 4.0 * rng.uniform();
    return Spectrum::from_energies(std::move(energies));
}

EigenSystem eigen_decompose(const ComplexMatrix& h) {
    if (h.rows() != h.cols())
        throw DimensionMismatchError("eigen_decompose needs a square matrix");
    if (!h.allFinite())
        throw NumericInputError("eigen_decompose: non-finite entries");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw AccuracyError("eigen_decompose: solver did not converge");
    const ComplexMatrix w = solver.eigenvectors();
    const Eigen::VectorXd e = solver.eigenvalues();
    const double residual =
        (w * e.asDiagonal() * w.adjoint() - h).cwiseAbs().maxCoeff();
    const double tol = 1e-9 * static_cast<double>(h.rows());
    if (residual > tol)
        throw AccuracyError("eigen_decompose: reconstruction residual " +
                            std::to_string(residual) + " exceeds tolerance");
    std::vector<double> energies(e.data(), e.data() + e.size());
    return EigenSystem{Spectrum{std::move(energies)}, w};
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (u.rows() != u.cols())
        return false;
    const ComplexMatrix g = u * u.adjoint();
    return (g - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
    if (h.rows() != h.cols())
        return false;
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace blochflow
