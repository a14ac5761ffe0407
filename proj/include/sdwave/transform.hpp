#ifndef SDWAVE_TRANSFORM_HPP
#define SDWAVE_TRANSFORM_HPP

#include <span>

#include "sdwave/exponents.hpp"
#include "sdwave/field.hpp"
#include "sdwave/trajectory.hpp"

namespace sdwave {

// Liouville time change  Lambda(t) = (1+t)^{ell+1}/(ell+1), t >= 0.
double time_forward(double t, double ell);

// Inverse map  ((ell+1) s)^{1/(ell+1)} - 1, s > 0.
double time_inverse(double s, double ell);

// Transformed lifespan -> original lifespan:  T = Lambda(T_w) - 1.
double lifespan_pullback(double T_transformed, double ell);

// The variable-speed problem
//   w_tt - <t>^{2 ell} Lap w = <t>^{sigma} |w|^p,  t >= t0,
// with sigma = 2 ell (mu < 1) or 2 ell - (p-1) (mu > 1), and the regime's
// rescaled initial data expressed as linear combinations of (u0, u1):
//   w(t0)   = pos_coeff0 * u0
//   w_t(t0) = vel_coeff0 * u0 + vel_coeff1 * u1.
struct TransformedProblem {
    Regime regime = Regime::low;
    int n = 2;
    double p = 2.0;
    double ell = 0.0;
    double t0 = 0.0;
    double speed_exponent = 0.0;   // 2 ell
    double source_exponent = 0.0;  // 2 ell (low), 2 ell - (p-1) (high)
    double pos_coeff0 = 1.0;
    double vel_coeff0 = 0.0;
    double vel_coeff1 = 1.0;
    DataProfile profile;
    RadialField w0, w1;  // sampled data (filled by the field-based builder)
};

// Profile-driven builder; the solver samples the data on its own grid.
TransformedProblem build_transformed(const ModelParams& params, const DataProfile& profile);

// Field-based builder per the problem statement: scales the given samples.
TransformedProblem build_transformed(const ModelParams& params,
                                     const RadialField& u0, const RadialField& u1);

// u on the requested original times, from a transformed trajectory
// (divides by <t> in the high regime).  Throws std::out_of_range when a
// requested time needs transformed times beyond the trajectory.
Trajectory pullback_solution(const Trajectory& w_traj, const ModelParams& params,
                             std::span<const double> original_times);

// Sup-norm discrepancy between the direct solve of the damped problem and
// the pulled-back transformed solve on [~0, window]; both solvers run at
// cfg.count.  The window is shortened if sup|u| exceeds 10x the initial
// amplitude (the comparison is meaningless near blow-up).
struct CrossCheckResult {
    double discrepancy = 0.0;
    double window = 0.0;
    int samples = 0;
};

CrossCheckResult cross_residual(const ModelParams& params, const DataProfile& profile,
                                const SolverConfig& cfg, double window);

}  // namespace sdwave

#endif
