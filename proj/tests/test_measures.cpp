#include <doctest.h>

#include <cmath>

#include "blochflow/alpha_curve.hpp"
#include "blochflow/errors.hpp"
#include "blochflow/measures.hpp"
#include "test_helpers.hpp"

using namespace blochflow;

namespace {

AlphaCurve curve_of(double t0, double t1, double dt, double (*f)(double)) {
    std::vector<double> ts, vs;
    for (double t = t0; t <= t1 + 1e-12; t += dt) {
        ts.push_back(t);
        vs.push_back(f(t));
    }
    return AlphaCurve::from_points(std::move(ts), std::move(vs),
                                   ModelTag::PerSpectrum, 0);
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("segment extraction with quadratic endpoint refinement") {
    // (t-1)^2 + 0.1: minimum at t = 1 falls between grid points.
    const AlphaCurve curve =
        curve_of(0.0, 2.0, 0.05, [](double t) { return (t - 1.0) * (t - 1.0) + 0.1; });
    const MonotoneSegments segs = monotone_segments(curve);
    REQUIRE(segs.segments.size() == 1);
    const Segment& s = segs.segments[0];
    CHECK(s.t_start == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.value_start == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(s.t_end == doctest::Approx(2.0));
    CHECK(s.value_end == doctest::Approx(1.1).epsilon(1e-9));
    CHECK(s.ends_at_grid_end);
}

TEST_CASE("flat and decreasing curves have no segments and zero measures") {
    const AlphaCurve flat =
        curve_of(0.0, 5.0, 0.1, [](double) { return 0.4; });
    CHECK(monotone_segments(flat).segments.empty());
    const AlphaCurve down =
        curve_of(0.0, 5.0, 0.1, [](double t) { return std::exp(-t); });
    CHECK(monotone_segments(down).segments.empty());
    const MeasureReport report = evaluate_measures(down);
    CHECK(report.m1 == 0.0);
    CHECK(report.m2 == 0.0);
    CHECK(report.m3 == 0.0);
    CHECK_FALSE(report.m1_divergent);
    CHECK(measure_m1(down).value() == 0.0);
}

TEST_CASE("hand-checked single-rise values") {
    // Piecewise: fall 1 -> 0.2 on [0,1], rise 0.2 -> 0.7 on [1,2].
    const AlphaCurve curve = curve_of(0.0, 2.0, 0.01, [](double t) {
        return t < 1.0 ? 1.0 - 0.8 * t : 0.2 + 0.5 * (t - 1.0);
    });
    const MeasureReport r = evaluate_measures(curve);
    CHECK(r.m1 == doctest::Approx(1.5 * std::log(0.7 / 0.2)).epsilon(1e-3));
    CHECK(r.m2 == doctest::Approx(2.0 * 0.5).epsilon(1e-3));
    CHECK(r.m3 == doctest::Approx(1.5 * (0.7 - 1.0 / 3.0)).epsilon(1e-3));
    CHECK(r.segment_count == 1);
}

TEST_CASE("m3 only counts the part of a rise above 1/3") {
    const AlphaCurve above = curve_of(0.0, 1.0, 0.01, [](double t) {
        return t < 0.5 ? 0.9 - 0.8 * t : 0.5 + 0.8 * (t - 0.5);
    });
    // Rise 0.5 -> 0.9, entirely above 1/3.
    CHECK(measure_m3(above) == doctest::Approx(1.5 * 0.4).epsilon(1e-3));
    const AlphaCurve cross = curve_of(0.0, 1.0, 0.01, [](double t) {
        return t < 0.5 ? 0.6 - 0.8 * t : 0.2 + 0.4 * (t - 0.5);
    });
    // Rise 0.2 -> 0.4 crosses the threshold: only 0.4 - 1/3 counts.
    CHECK(measure_m3(cross) == doctest::Approx(1.5 * (0.4 - 1.0 / 3.0)).epsilon(2e-2));
    const AlphaCurve below = curve_of(0.0, 1.0, 0.01, [](double t) {
        return t < 0.5 ? 0.3 - 0.4 * t : 0.1 + 0.2 * (t - 0.5);
    });
    CHECK(measure_m3(below) == 0.0);
}

TEST_CASE("measures add over disjoint rises and m3 <= 3/4 m2") {
    const auto wiggly = [](double t) {
        return 0.45 + 0.35 * std::sin(t) * std::exp(-0.1 * t);
    };
    const AlphaCurve curve = curve_of(0.0, 30.0, 0.01, wiggly);
    const MeasureReport r = evaluate_measures(curve);
    CHECK(r.segment_count > 2);
    CHECK(r.m3 <= 0.75 * r.m2 + 1e-12);
    CHECK(r.m1 > 0.0);
    // Additivity: the same rises measured separately sum to the total.
    double m2_sum = 0.0;
    for (const Segment& s : monotone_segments(curve).segments)
        m2_sum += 2.0 * (s.value_end - s.value_start);
    CHECK(r.m2 == doctest::Approx(m2_sum + r.tail_m2).epsilon(1e-12));
}

TEST_CASE("a rise from below the floor marks m1 divergent") {
    const AlphaCurve curve = curve_of(0.0, 2.0, 0.001, [](double t) {
        const double d = t - 1.0;
        return 1e-11 + 0.5 * d * d;
    });
    const MeasureReport r = evaluate_measures(curve);
    CHECK(r.m1_divergent);
    CHECK(r.m1 == 0.0);
    CHECK(r.m2 > 0.0);
    CHECK(!measure_m1(curve).has_value());
    CHECK(measure_m2(curve) == doctest::Approx(2.0 * 0.5).epsilon(1e-2));
}

TEST_CASE("g(t) recovers the decay rate of an exponential rise") {
    // alpha = 0.1 e^{0.8 t}: g = 1.5 * 0.8 everywhere it increases.
    const AlphaCurve curve =
        curve_of(0.0, 1.0, 0.001, [](double t) { return 0.1 * std::exp(0.8 * t); });
    const GCurve g = g_of_t(curve);
    CHECK_FALSE(g.divergent);
    for (std::size_t i = 1; i + 1 < g.values.size(); ++i)
        CHECK(g.values[i] == doctest::Approx(1.2).epsilon(1e-5));
    // Trapezoid integral of g equals 1.5 ln(alpha_f/alpha_i).
    double integral = 0.0;
    for (std::size_t i = 1; i < g.values.size(); ++i)
        integral += 0.5 * (g.values[i] + g.values[i - 1]) *
                    (g.times[i] - g.times[i - 1]);
    CHECK(integral == doctest::Approx(1.5 * 0.8).epsilon(2e-3));
}

TEST_CASE("g flags divergence when the curve rises out of the floor") {
    const AlphaCurve curve = curve_of(0.0, 1.0, 0.001, [](double t) {
        const double d = t - 0.5;
        return 1e-12 + d * d;
    });
    CHECK(g_of_t(curve).divergent);
    // Decreasing sections contribute zero.
    const AlphaCurve down =
        curve_of(0.0, 1.0, 0.01, [](double t) { return 1.0 - 0.5 * t; });
    const GCurve g = g_of_t(down);
    for (double v : g.values)
        CHECK(v == 0.0);
}

TEST_CASE("closed-form poisson measures at a long horizon") {
    TimeGrid grid{0.0, 500.0, 0.005};
    const AlphaCurve curve = poisson_curve(8, grid);
    const MeasureReport r = evaluate_measures(curve);
    CHECK(r.m1 == doctest::Approx(1.0637).epsilon(0.005));
    CHECK(r.m2 == doctest::Approx(0.1729).epsilon(0.005));
    CHECK(r.m3 == 0.0);
    CHECK(r.tail_m2 > 0.0);  // sinc^2 revivals continue past any horizon
}

TEST_CASE("a short horizon raises instead of silently truncating") {
    TimeGrid grid{0.0, 40.0, 0.005};
    const AlphaCurve curve = poisson_curve(4, grid);
    CHECK_THROWS_AS(evaluate_measures(curve), HorizonError);
    MeasureOptions relaxed;
    relaxed.check_horizon = false;
    const MeasureReport r = evaluate_measures(curve, relaxed);
    CHECK(r.m2 > 0.0);
}

TEST_CASE("from_points validates the grid") {
    CHECK_THROWS_AS(AlphaCurve::from_points({0.0, 0.0, 1.0}, {1.0, 1.0, 1.0},
                                            ModelTag::PerSpectrum, 0),
                    InvalidArgumentError);
    CHECK_THROWS_AS(AlphaCurve::from_points({0.0, 1.0}, {1.0},
                                            ModelTag::PerSpectrum, 0),
                    InvalidArgumentError);
}

TEST_CASE("concurrence of the depolarizing output") {
    CHECK(concurrence_of_alpha(0.2) == 0.0);
    CHECK(concurrence_of_alpha(1.0 / 3.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(concurrence_of_alpha(1.0) == doctest::Approx(1.0));
    CHECK(concurrence_of_alpha(0.5) == doctest::Approx(0.25));
}

TEST_CASE("choi state: entries, spectrum, positivity window") {
    const ChoiMatrix j = choi_of_depolarizing(0.4);
    CHECK(j.entries(0, 0).real() == doctest::Approx(0.4 * 0.5 + 0.6 * 0.25));
    CHECK(j.entries(0, 3).real() == doctest::Approx(0.2));
    CHECK(j.entries(1, 1).real() == doctest::Approx(0.15));
    CHECK(j.entries.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(j.entries);
    const auto evs = solver.eigenvalues();
    CHECK(evs(0) == doctest::Approx((1.0 - 0.4) / 4.0).epsilon(1e-12));
    CHECK(evs(3) == doctest::Approx((1.0 + 3.0 * 0.4) / 4.0).epsilon(1e-12));
    // Positivity fails exactly outside [-1/3, 1].
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> outside(
        choi_of_depolarizing(-0.4).entries);
    CHECK(outside.eigenvalues()(0) < 0.0);
}

TEST_CASE("choi trace norm is exactly 1 inside the physical window") {
    CHECK(choi_trace_norm(-1.0 / 3.0) == 1.0);
    CHECK(choi_trace_norm(0.0) == 1.0);
    CHECK(choi_trace_norm(0.73) == 1.0);
    CHECK(choi_trace_norm(1.0) == 1.0);
    CHECK(choi_trace_norm(1.2) > 1.0);
    CHECK(choi_trace_norm(-0.5) > 1.0);
    CHECK(choi_trace_norm(-0.5) ==
          doctest::Approx(0.75 * 1.5 + 0.25 * 0.5).epsilon(1e-14));
    CHECK_THROWS_AS(choi_trace_norm(std::nan("")), NumericInputError);
}

TEST_CASE("trace distance on known pairs") {
    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    CHECK(trace_distance(p0, p1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(trace_distance(p0, p0) == doctest::Approx(0.0).scale(1.0));
    const double a = 0.37;
    ComplexMatrix plus(2, 2), minus(2, 2);
    plus << 0.5, 0.5 * a, 0.5 * a, 0.5;
    minus << 0.5, -0.5 * a, -0.5 * a, 0.5;
    CHECK(trace_distance(plus, minus) == doctest::Approx(2.0 * a).epsilon(1e-12));
    CHECK_THROWS_AS(trace_distance(p0, ComplexMatrix::Zero(3, 3)),
                    DimensionMismatchError);
}

}  // TEST_SUITE
