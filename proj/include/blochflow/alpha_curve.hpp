#pragma once

#include <string>
#include <vector>

#include "blochflow/spectrum.hpp"

namespace blochflow {

struct TimeGrid {
    double start = 0.0;
    double stop = 10.0;
    double step = 0.01;

    // start + i*step up to stop (inclusive within half-ulp slack).
    std::vector<double> points() const;
};

enum class ModelTag {
    PerSpectrum,      // alpha of one concrete spectrum
    GueExactN,        // ensemble average, exact finite N
    PoissonN,         // flat-spectrum average, finite N
    GueInfinite,      // (J1(2t)/t)^2
    PoissonInfinite,  // (sin 2t / 2t)^2
    MonteCarlo,       // sampled channel diagonal
};

std::string to_string(ModelTag tag);

struct AlphaCurve {
    std::vector<double> times;  // strictly increasing
    std::vector<double> values;
    ModelTag tag = ModelTag::PerSpectrum;
    int dim = 0;  // 0 for infinite-N models

    // Validates matching sizes and a strictly increasing grid.
    static AlphaCurve from_points(std::vector<double> times,
                                  std::vector<double> values, ModelTag tag,
                                  int dim);
};

AlphaCurve gue_exact_curve(int n, const TimeGrid& grid);
AlphaCurve gue_infinite_curve(const TimeGrid& grid);
AlphaCurve poisson_curve(int n, const TimeGrid& grid);
AlphaCurve poisson_infinite_curve(const TimeGrid& grid);
AlphaCurve curve_from_spectrum(const Spectrum& spec, const TimeGrid& grid);

}  // namespace blochflow
