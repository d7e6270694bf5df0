#include "blochflow/measures.hpp"

#include <algorithm>
#include <cmath>

#include "blochflow/errors.hpp"

namespace blochflow {

namespace {

// Parabola through three points; returns false when the curvature has the
// wrong sign (or vanishes), in which case the grid point stands.
bool refine_extremum(const double* t, const double* v, bool want_minimum,
                     double& t_out, double& v_out) {
    const double d10 = t[1] - t[0], d21 = t[2] - t[1], d20 = t[2] - t[0];
    const double s1 = (v[1] - v[0]) / d10;
    const double s2 = (v[2] - v[1]) / d21;
    const double c2 = (s2 - s1) / d20;  // half the second derivative
    if (want_minimum ? (c2 <= 0.0) : (c2 >= 0.0))
        return false;
    const double tv = 0.5 * (t[0] + t[1]) - s1 / (2.0 * c2);
    if (tv < t[0] || tv > t[2])
        return false;
    t_out = tv;
    v_out = v[0] + s1 * (tv - t[0]) + c2 * (tv - t[0]) * (tv - t[1]);
    return true;
}

struct TailFit {
    double amount = 0.0;  // extrapolated sum of increments past the horizon
    bool integrable = true;
};

// Fits log(increment) vs log(mid-time) over the trailing complete segments
// and extrapolates the remaining sum assuming the fitted power law and the
// observed segment spacing.
TailFit estimate_tail(const std::vector<Segment>& segments,
                      const std::vector<double>& increments) {
    constexpr std::size_t kFitCount = 8;
    std::vector<double> tau, inc;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (segments[i].ends_at_grid_end)
            continue;  // a truncated rise poisons the power-law fit
        if (increments[i] <= 0.0)
            continue;
        tau.push_back(0.5 * (segments[i].t_start + segments[i].t_end));
        inc.push_back(increments[i]);
    }
    if (tau.size() < kFitCount + 1)
        return {};  // few segments: the curve has genuinely decayed
    const std::size_t lo = tau.size() - kFitCount;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = lo; i < tau.size(); ++i) {
        const double x = std::log(tau[i]);
        const double y = std::log(inc[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double kn = static_cast<double>(kFitCount);
    const double slope = (kn * sxy - sx * sy) / (kn * sxx - sx * sx);
    const double p = -slope;
    if (p <= 1.05)
        return {0.0, false};
    const double spacing = (tau.back() - tau[lo]) / (kn - 1.0);
    // sum_{tau' > tau_last} c tau'^-p ~ integral / spacing
    return {inc.back() * tau.back() / ((p - 1.0) * spacing), true};
}

}  // namespace

MonotoneSegments monotone_segments(const AlphaCurve& curve, double slope_tol) {
    const std::size_t n = curve.times.size();
    if (n < 3)
        throw InvalidArgumentError("curve needs at least three points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(curve.times[i] > curve.times[i - 1]))
            throw InvalidArgumentError("non-monotone time grid");

    const auto& t = curve.times;
    const auto& v = curve.values;
    MonotoneSegments out;
    out.slope_tol = slope_tol;

    std::size_t i = 0;
    while (i + 1 < n) {
        const double slope = (v[i + 1] - v[i]) / (t[i + 1] - t[i]);
        if (slope <= slope_tol) {
            ++i;
            continue;
        }
        std::size_t a = i;
        while (i + 1 < n && (v[i + 1] - v[i]) / (t[i + 1] - t[i]) > slope_tol)
            ++i;
        const std::size_t b = i;

        Segment seg;
        seg.t_start = t[a];
        seg.value_start = v[a];
        seg.t_end = t[b];
        seg.value_end = v[b];
        seg.ends_at_grid_end = (b == n - 1);
        if (a > 0)
            refine_extremum(&t[a - 1], &v[a - 1], true, seg.t_start,
                            seg.value_start);
        if (b < n - 1)
            refine_extremum(&t[b - 1], &v[b - 1], false, seg.t_end,
                            seg.value_end);
        if (seg.value_end > seg.value_start)
            out.segments.push_back(seg);
    }
    return out;
}

GCurve g_of_t(const AlphaCurve& curve, double floor) {
    const std::size_t n = curve.times.size();
    if (n < 3)
        throw InvalidArgumentError("curve needs at least three points");
    const auto& t = curve.times;
    const auto& v = curve.values;
    GCurve out;
    out.floor = floor;
    out.times = t;
    out.values.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = (i == 0) ? 0 : i - 1;
        const std::size_t hi = (i == n - 1) ? n - 1 : i + 1;
        const double deriv = (v[hi] - v[lo]) / (t[hi] - t[lo]);
        // A rise starting at the floor itself has zero centered slope, so
        // divergence detection also looks one step ahead.
        const double ahead =
            (i + 1 < n) ? (v[i + 1] - v[i]) / (t[i + 1] - t[i]) : 0.0;
        if (deriv <= 1e-10 && ahead <= 1e-10)
            continue;
        if (v[i] <= floor) {
            out.divergent = true;
            continue;
        }
        if (deriv > 1e-10)
            out.values[i] = 1.5 * deriv / v[i];
    }
    return out;
}

MeasureReport evaluate_measures(const AlphaCurve& curve,
                                const MeasureOptions& options) {
    const MonotoneSegments segs = monotone_segments(curve, options.slope_tol);

    MeasureReport report;
    report.horizon = curve.times.back();
    report.floor_threshold = options.floor;
    report.segment_count = static_cast<int>(segs.segments.size());

    std::vector<double> inc_m1, inc_m2;
    inc_m1.reserve(segs.segments.size());
    inc_m2.reserve(segs.segments.size());
    for (const Segment& s : segs.segments) {
        inc_m2.push_back(s.value_end - s.value_start);
        if (s.value_start < options.floor)
            report.m1_divergent = true;
        else
            inc_m1.push_back(std::log(s.value_end) - std::log(s.value_start));
        report.m2 += 2.0 * (s.value_end - s.value_start);
        if (s.value_end > 1.0 / 3.0)
            report.m3 += 1.5 * (s.value_end - std::max(s.value_start, 1.0 / 3.0));
    }

    const TailFit tail2 = estimate_tail(segs.segments, inc_m2);
    if (!tail2.integrable) {
        if (options.check_horizon)
            throw HorizonError("alpha increments do not decay integrably");
    } else {
        report.tail_m2 = 2.0 * tail2.amount;
        report.m2 += report.tail_m2;
        if (options.check_horizon && report.m2 > 0.0 &&
            report.tail_m2 > options.tail_fraction_limit * report.m2)
            throw HorizonError("horizon too short: m2 tail above tolerance");
    }

    if (!report.m1_divergent) {
        double sum = 0.0;
        for (double x : inc_m1)
            sum += x;
        report.m1 = 1.5 * sum;
        const TailFit tail1 = estimate_tail(segs.segments, inc_m1);
        if (!tail1.integrable) {
            if (options.check_horizon)
                throw HorizonError("log-alpha increments do not decay integrably");
        } else {
            report.tail_m1 = 1.5 * tail1.amount;
            report.m1 += report.tail_m1;
            if (options.check_horizon && report.m1 > 0.0 &&
                report.tail_m1 > options.tail_fraction_limit * report.m1)
                throw HorizonError("horizon too short: m1 tail above tolerance");
        }
    }
    return report;
}

std::optional<double> measure_m1(const AlphaCurve& curve) {
    const MeasureReport report = evaluate_measures(curve);
    if (report.m1_divergent)
        return std::nullopt;
    return report.m1;
}

double measure_m2(const AlphaCurve& curve) {
    return evaluate_measures(curve).m2;
}

double measure_m3(const AlphaCurve& curve) {
    return evaluate_measures(curve).m3;
}

double concurrence_of_alpha(double alpha) {
    return std::max(0.0, 1.5 * alpha - 0.5);
}

ChoiMatrix choi_of_depolarizing(double alpha) {
    Eigen::Matrix4cd bell = Eigen::Matrix4cd::Zero();
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    ChoiMatrix out;
    out.alpha = alpha;
    out.entries = alpha * bell +
                  (1.0 - alpha) * 0.25 * Eigen::Matrix4cd::Identity();
    return out;
}

double choi_trace_norm(double alpha_ratio) {
    if (!std::isfinite(alpha_ratio))
        throw NumericInputError("alpha ratio must be finite");
    if (alpha_ratio >= -1.0 / 3.0 && alpha_ratio <= 1.0)
        return 1.0;  // eigenvalues are nonnegative: the norm is the trace
    return 0.75 * std::abs(1.0 - alpha_ratio) +
           0.25 * std::abs(1.0 + 3.0 * alpha_ratio);
}

double trace_distance(const ComplexMatrix& rho0, const ComplexMatrix& rho1) {
    if (rho0.rows() != rho1.rows() || rho0.cols() != rho1.cols() ||
        rho0.rows() != rho0.cols())
        throw DimensionMismatchError("trace distance needs equal square shapes");
    const ComplexMatrix d = rho0 - rho1;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        ((d + d.adjoint()) * 0.5).eval());
    return solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace blochflow
