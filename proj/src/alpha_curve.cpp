#include "blochflow/alpha_curve.hpp"

#include <cmath>

#include "blochflow/channel.hpp"
#include "blochflow/errors.hpp"
#include "blochflow/spectral_analytics.hpp"

namespace blochflow {

std::vector<double> TimeGrid::points() const {
    if (!(start < stop))
        throw InvalidArgumentError("time grid needs start < stop");
    if (!(step > 0.0))
        throw InvalidArgumentError("time grid needs a positive step");
    const auto count =
        static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> ts(count);
    for (std::size_t i = 0; i < count; ++i)
        ts[i] = start + static_cast<double>(i) * step;
    return ts;
}

std::string to_string(ModelTag tag) {
    switch (tag) {
        case ModelTag::PerSpectrum: return "per-spectrum";
        case ModelTag::GueExactN: return "gue-exact";
        case ModelTag::PoissonN: return "poisson";
        case ModelTag::GueInfinite: return "gue-infinite";
        case ModelTag::PoissonInfinite: return "poisson-infinite";
        case ModelTag::MonteCarlo: return "monte-carlo";
    }
    return "unknown";
}

AlphaCurve AlphaCurve::from_points(std::vector<double> times,
                                   std::vector<double> values, ModelTag tag,
                                   int dim) {
    if (times.size() != values.size())
        throw InvalidArgumentError("curve times and values differ in length");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw InvalidArgumentError("non-monotone time grid");
    return AlphaCurve{std::move(times), std::move(values), tag, dim};
}

namespace {

template <typename Fn>
AlphaCurve tabulate(const TimeGrid& grid, ModelTag tag, int dim, Fn&& fn) {
    std::vector<double> ts = grid.points();
    std::vector<double> vs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        vs[i] = fn(ts[i]);
    return AlphaCurve{std::move(ts), std::move(vs), tag, dim};
}

}  // namespace

AlphaCurve gue_exact_curve(int n, const TimeGrid& grid) {
    GueSpectralModel model(n, grid.stop);
    return tabulate(grid, ModelTag::GueExactN, n,
                    [&](double t) { return model.alpha(t); });
}

AlphaCurve gue_infinite_curve(const TimeGrid& grid) {
    return tabulate(grid, ModelTag::GueInfinite, 0,
                    [](double t) { return alpha_gue_infinite(t); });
}

AlphaCurve poisson_curve(int n, const TimeGrid& grid) {
    if (n < 1)
        throw InvalidDimensionError("poisson curve needs dimension >= 1");
    return tabulate(grid, ModelTag::PoissonN, n,
                    [n](double t) { return alpha_poisson(t, n); });
}

AlphaCurve poisson_infinite_curve(const TimeGrid& grid) {
    return tabulate(grid, ModelTag::PoissonInfinite, 0,
                    [](double t) { return alpha_poisson_infinite(t); });
}

AlphaCurve curve_from_spectrum(const Spectrum& spec, const TimeGrid& grid) {
    return tabulate(grid, ModelTag::PerSpectrum, spec.dim(),
                    [&](double t) { return alpha_from_spectrum(spec, t); });
}

}  // namespace blochflow
