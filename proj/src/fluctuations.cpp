#include "blochflow/fluctuations.hpp"

#include <cmath>

#include "blochflow/errors.hpp"
#include "blochflow/rng.hpp"

namespace blochflow {

namespace {

void check_pole(int n) {
    if (n == 1 || n == 3)
        throw InvalidDimensionError(
            "fluctuation formulas have poles at N = 1 and N = 3");
    if (n < 1)
        throw InvalidDimensionError("dimension must be >= 1");
}

// The cross term f*(t)^2 f(2t) + f(t)^2 f*(2t); the two summands are
// conjugate, so this is real.
double cross_term(std::complex<double> f_t, std::complex<double> f_2t) {
    return 2.0 * (std::conj(f_t) * std::conj(f_t) * f_2t).real();
}

}  // namespace

double second_moment_00(std::complex<double> f_t, std::complex<double> f_2t,
                        int n) {
    check_pole(n);
    const double nn = n;
    const double inv2 = 1.0 / (nn * nn);
    const double pref = 1.0 / (2.0 * nn * (1.0 - inv2) * (1.0 - 9.0 * inv2));
    const double ft2 = std::norm(f_t);
    const double f2t2 = std::norm(f_2t);
    const double x = cross_term(f_t, f_2t);
    return pref * ((1.0 - 9.0 * inv2) +
                   (2.0 - 3.0 / nn - 6.0 * inv2) *
                       (nn * ft2 * ft2 + f2t2 / nn - 4.0 * ft2 / nn) +
                   (1.0 - 4.0 / nn) * x);
}

FluctuationPrediction sigma2_exact(ElementClass kind, std::complex<double> f_t,
                                   std::complex<double> f_2t, int n,
                                   double mean_alpha) {
    check_pole(n);
    const double nn = n;
    const double inv2 = 1.0 / (nn * nn);
    const double pref = 1.0 / (2.0 * nn * (1.0 - inv2) * (1.0 - 9.0 * inv2));
    const double ft2 = std::norm(f_t);
    const double f2t2 = std::norm(f_2t);
    const double x = cross_term(f_t, f_2t);

    FluctuationPrediction out;
    out.kind = kind;
    out.exact = true;
    switch (kind) {
        case ElementClass::Diagonal: {
            out.second_moment = second_moment_00(f_t, f_2t, n);
            out.variance = out.second_moment - mean_alpha * mean_alpha;
            break;
        }
        case ElementClass::Column3: {
            out.variance = pref * (1.0 - 2.0 / nn) *
                           ((1.0 - 9.0 * inv2) - 3.0 * ft2 * ft2 -
                            3.0 * f2t2 * inv2 + 12.0 * ft2 * inv2 + x);
            out.second_moment = out.variance;
            break;
        }
        case ElementClass::OffDiagonal: {
            out.variance = pref * ((1.0 - 9.0 * inv2) + ft2 * ft2 +
                                   f2t2 * inv2 - 4.0 * ft2 * inv2 -
                                   (1.0 - 6.0 * inv2) * x);
            out.second_moment = out.variance;
            break;
        }
    }
    return out;
}

FluctuationPrediction sigma2_leading(ElementClass kind,
                                     std::complex<double> h_t,
                                     std::complex<double> h_2t, int n) {
    if (n < 1)
        throw InvalidDimensionError("dimension must be >= 1");
    const double h2 = std::norm(h_t);
    const double x = cross_term(h_t, h_2t);
    FluctuationPrediction out;
    out.kind = kind;
    out.exact = false;
    const double bracket = (kind == ElementClass::OffDiagonal)
                               ? 1.0 + h2 * h2 - x
                               : 1.0 + x - 3.0 * h2 * h2;
    out.variance = bracket / (2.0 * n);
    out.second_moment = out.variance;
    return out;
}

EmpiricalFluctuations monte_carlo_fluctuations(
    const Spectrum& spec, const EnvironmentSpec& env,
    const std::vector<double>& times, int n_samples, std::uint64_t seed,
    int workers, int bootstrap_reps) {
    if (n_samples < 30)
        throw InvalidArgumentError(
            "variance estimation needs at least 30 samples");
    const std::vector<Eigen::Matrix4d> slabs =
        haar_ptm_slabs(spec, env, times, n_samples, seed, workers);
    const std::size_t nt = times.size();

    // Per class: entry coordinates pooled as i.i.d.
    static const std::vector<std::pair<int, int>> diag = {{0, 0}, {1, 1}, {2, 2}};
    static const std::vector<std::pair<int, int>> col3 = {{0, 3}, {1, 3}, {2, 3}};
    static const std::vector<std::pair<int, int>> offd = {
        {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

    EmpiricalFluctuations out;
    out.times = times;
    out.n_samples = n_samples;
    out.bootstrap_reps = bootstrap_reps;
    auto resize_all = [&](auto&... vecs) { (vecs.resize(nt), ...); };
    resize_all(out.var_diagonal, out.var_column3, out.var_offdiagonal,
               out.se_diagonal, out.se_column3, out.se_offdiagonal,
               out.mean_diagonal, out.mean_column3, out.mean_offdiagonal);

    // Bootstrap draw indices are shared across time points and classes.
    std::vector<std::vector<int>> boot_indices(bootstrap_reps);
    RandomStream boot_rng(seed, kBootstrapStream);
    for (auto& idx : boot_indices) {
        idx.resize(n_samples);
        for (int& v : idx)
            v = static_cast<int>(boot_rng.uniform() * n_samples);
    }

    auto pooled = [&](std::size_t k, const std::vector<std::pair<int, int>>& coords,
                      const std::vector<int>* subset, double& mean_out) {
        const std::size_t count =
            coords.size() * static_cast<std::size_t>(n_samples);
        double mean = 0.0;
        auto value = [&](int i, std::size_t e) {
            const int draw = subset ? (*subset)[i] : i;
            const auto& m = slabs[static_cast<std::size_t>(draw) * nt + k];
            return m(coords[e].first, coords[e].second);
        };
        for (int i = 0; i < n_samples; ++i)
            for (std::size_t e = 0; e < coords.size(); ++e)
                mean += value(i, e);
        mean /= static_cast<double>(count);
        double ss = 0.0;
        for (int i = 0; i < n_samples; ++i)
            for (std::size_t e = 0; e < coords.size(); ++e) {
                const double d = value(i, e) - mean;
                ss += d * d;
            }
        mean_out = mean;
        return ss / static_cast<double>(count - 1);
    };

    auto fill_class = [&](const std::vector<std::pair<int, int>>& coords,
                          std::vector<double>& var, std::vector<double>& se,
                          std::vector<double>& mean) {
        for (std::size_t k = 0; k < nt; ++k) {
            var[k] = pooled(k, coords, nullptr, mean[k]);
            if (bootstrap_reps < 2) {
                se[k] = 0.0;
                continue;
            }
            double s = 0.0, s2 = 0.0;
            for (int b = 0; b < bootstrap_reps; ++b) {
                double unused;
                const double v = pooled(k, coords, &boot_indices[b], unused);
                s += v;
                s2 += v * v;
            }
            const double bm = s / bootstrap_reps;
            se[k] = std::sqrt(
                std::max(0.0, (s2 - bootstrap_reps * bm * bm) / (bootstrap_reps - 1)));
        }
    };

    fill_class(diag, out.var_diagonal, out.se_diagonal, out.mean_diagonal);
    fill_class(col3, out.var_column3, out.se_column3, out.mean_column3);
    fill_class(offd, out.var_offdiagonal, out.se_offdiagonal, out.mean_offdiagonal);
    return out;
}

}  // namespace blochflow
