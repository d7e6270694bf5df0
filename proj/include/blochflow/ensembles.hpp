#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "blochflow/spectrum.hpp"

namespace blochflow {

using ComplexMatrix = Eigen::MatrixXcd;

// GUE draw normalized so <|H_ij|^2> = 1/N: real N(0, 1/N) on the diagonal,
// complex off-diagonal entries with independent real/imaginary parts of
// variance 1/(2N) each.  The bulk spectrum then spans [-2, 2].
//
// Draw order (fixed, part of the reproducibility contract): diagonal entries
// 0..N-1 first, then the upper triangle row by row, (re, im) per entry, all
// from RandomStream(seed, stream).
ComplexMatrix sample_gue(int dim, std::uint64_t seed, std::uint64_t stream = 0);

// Haar-distributed unitary: QR of a complex Ginibre matrix with column phases
// fixed by the sign of R's diagonal.  Ginibre entries are drawn row by row,
// (re, im) per entry.
ComplexMatrix sample_haar(int dim, std::uint64_t seed, std::uint64_t stream = 0);

// dim i.i.d. levels uniform on [-2, 2], sorted: flat density, no repulsion.
Spectrum sample_poisson_spectrum(int dim, std::uint64_t seed,
                                 std::uint64_t stream = 0);

struct EigenSystem {
    Spectrum spectrum;      // ascending
    ComplexMatrix vectors;  // columns ordered to match
};

// Hermitian eigendecomposition H = W diag(E) W^dagger.  Raises if entries are
// non-finite or the reconstruction residual exceeds 1e-9 * dim.
EigenSystem eigen_decompose(const ComplexMatrix& h);

bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);
bool is_hermitian(const ComplexMatrix& h, double tol = 1e-12);

}  // namespace blochflow
