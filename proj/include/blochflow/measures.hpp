#pragma once

#include <optional>

#include "blochflow/alpha_curve.hpp"
#include "blochflow/ensembles.hpp"

namespace blochflow {

// One maximal interval on which the curve strictly increases.  Endpoints are
// refined off the grid by local quadratic fits through the bracketing
// extrema; a segment cut short by the end of the grid is flagged so tail
// extrapolation can ignore it.
struct Segment {
    double t_start = 0.0, t_end = 0.0;
    double value_start = 0.0, value_end = 0.0;
    bool ends_at_grid_end = false;
};

struct MonotoneSegments {
    std::vector<Segment> segments;  // disjoint, ascending
    double slope_tol = 0.0;
};

// Needs >= 3 points; slopes above slope_tol count as increasing, so flat
// curves produce no segments.
MonotoneSegments monotone_segments(const AlphaCurve& curve,
                                   double slope_tol = 1e-10);

// g(t) = (3/2) alpha'/alpha where the curve increases, else 0, via centered
// differences.  If alpha <= floor inside an increasing region the flow
// diverges; g is reported 0 there and the flag is set.
struct GCurve {
    std::vector<double> times;
    std::vector<double> values;
    bool divergent = false;
    double floor = 0.0;
};
GCurve g_of_t(const AlphaCurve& curve, double floor = 1e-9);

struct MeasureOptions {
    double slope_tol = 1e-10;
    double floor = 1e-9;                // below this, M1 is divergent
    double tail_fraction_limit = 0.005; // tail/total above this raises
    bool check_horizon = true;
};

struct MeasureReport {
    double m1 = 0.0;
    bool m1_divergent = false;
    double m2 = 0.0;
    double m3 = 0.0;
    double horizon = 0.0;   // last grid time
    double tail_m1 = 0.0;   // included in m1 when finite
    double tail_m2 = 0.0;   // included in m2
    int segment_count = 0;
    double floor_threshold = 0.0;
};

// All three measures in one segment pass:
//   m1 = (3/2) sum ln(alpha_f / alpha_i)          (divergent if alpha_i < floor)
//   m2 = 2 sum (alpha_f - alpha_i)
//   m3 = (3/2) sum over the part of each rise above alpha = 1/3
// plus power-law tail extrapolation beyond the horizon for m1 and m2 (fitted
// on the last complete segments; raises HorizonError if the fitted increments
// do not decay integrably or the tail exceeds tail_fraction_limit of the
// total).
MeasureReport evaluate_measures(const AlphaCurve& curve,
                                const MeasureOptions& options = {});

// Convenience wrappers over evaluate_measures.
std::optional<double> measure_m1(const AlphaCurve& curve);  // nullopt = divergent
double measure_m2(const AlphaCurve& curve);
double measure_m3(const AlphaCurve& curve);

// max(0, (3 alpha - 1)/2): entanglement with an ancilla survives the
// depolarizing channel only above alpha = 1/3.
double concurrence_of_alpha(double alpha);

// Jamiolkowski state of the radius-alpha depolarizing channel:
// alpha |Phi+><Phi+| + (1 - alpha) id/4.  Eigenvalues (1-alpha)/4 three
// times and (1+3 alpha)/4; positive iff alpha in [-1/3, 1].
struct ChoiMatrix {
    Eigen::Matrix4cd entries;
    double alpha = 1.0;
};
ChoiMatrix choi_of_depolarizing(double alpha);

// Trace norm of the Choi state of an intermediate map with radius ratio
// alpha_r: 3|1-alpha_r|/4 + |1+3 alpha_r|/4.  Returns exactly 1 on
// [-1/3, 1] (the physical window) and > 1 outside.
double choi_trace_norm(double alpha_ratio);

// Full trace norm ||rho0 - rho1||_1, no 1/2 factor: orthogonal pure states
// give 2, and states (id +- alpha sigma_x)/2 give 2 alpha.
double trace_distance(const ComplexMatrix& rho0, const ComplexMatrix& rho1);

}  // namespace blochflow
