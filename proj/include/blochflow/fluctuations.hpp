#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "blochflow/channel.hpp"

namespace blochflow {

// Symmetry classes of the 4x4 transfer-matrix entries under the Haar average:
// the three diagonals (i,i), the three identity-column entries (i,3), and the
// six off-diagonals (i,j!=i), i,j in {0,1,2}.  Row 3 is deterministic.
enum class ElementClass { Diagonal, Column3, OffDiagonal };

struct FluctuationPrediction {
    double t = 0.0;
    ElementClass kind = ElementClass::Diagonal;
    double second_moment = 0.0;
    double variance = 0.0;
    bool exact = true;  // all orders in 1/N vs leading order
};

// Haar second moment <Lambda_00^2> for one fixed spectrum, exact to all
// orders in 1/N.  Inputs are the spectral transforms at t and 2t.
// N = 1 and N = 3 are poles of the prefactor and raise.
double second_moment_00(std::complex<double> f_t, std::complex<double> f_2t,
                        int n);

// Exact variance for the given class.  For the diagonal class the caller
// supplies the mean radius (variance = second moment - mean^2); the other two
// classes have mean zero and are self-contained.
FluctuationPrediction sigma2_exact(ElementClass kind, std::complex<double> f_t,
                                   std::complex<double> f_2t, int n,
                                   double mean_alpha);

// Leading order in 1/N with h = <f>:
//   diagonal and column-3: [1 + (h*^2 h_2t + h^2 h*_2t) - 3|h|^4] / 2N,
//   off-diagonal:          [1 + |h|^4 - (h*^2 h_2t + h^2 h*_2t)] / 2N.
// second_moment is reported equal to the variance (no mean input at this
// order).
FluctuationPrediction sigma2_leading(ElementClass kind,
                                     std::complex<double> h_t,
                                     std::complex<double> h_2t, int n);

struct EmpiricalFluctuations {
    std::vector<double> times;
    // One entry per time point; variances pooled within each symmetry class,
    // with bootstrap standard errors (resampling over Haar draws).
    std::vector<double> var_diagonal, var_column3, var_offdiagonal;
    std::vector<double> se_diagonal, se_column3, se_offdiagonal;
    std::vector<double> mean_diagonal, mean_column3, mean_offdiagonal;
    int n_samples = 0;
    int bootstrap_reps = 0;
};

// Unbiased pooled sample variances of the transfer-matrix entries over
// n_samples >= 30 Haar draws at a fixed spectrum.  Draw i uses stream i;
// bootstrap resampling uses the reserved bootstrap stream.
EmpiricalFluctuations monte_carlo_fluctuations(
    const Spectrum& spec, const EnvironmentSpec& env,
    const std::vector<double>& times, int n_samples, std::uint64_t seed,
    int workers = 0, int bootstrap_reps = 200);

}  // namespace blochflow
