#ifndef SDWAVE_RADIAL_SOLVER_HPP
#define SDWAVE_RADIAL_SOLVER_HPP

#include <span>

#include "sdwave/exponents.hpp"
#include "sdwave/field.hpp"
#include "sdwave/fit.hpp"
#include "sdwave/ode_oracle.hpp"
#include "sdwave/trajectory.hpp"
#include "sdwave/transform.hpp"

namespace sdwave {

struct SolveOutcome {
    Trajectory trajectory;
    BlowupReport report;
};

// Direct solve of  u_tt - Lap u + mu/(1+t) u_t = |u|^p  with data
// (eps u0, eps u1) from the profile.  Three-level leapfrog, centered
// semi-implicit damping, symmetry ghost at r = 0 (Laplacian limit n u_rr),
// homogeneous Dirichlet at r_max = R + t_max + margin (outside the cone).
SolveOutcome solve_damped(const ModelParams& params, const DataProfile& profile,
                          const SolverConfig& cfg);

// Variable-speed solve of the transformed problem; time step
// dt_k = cfl dr / (1+t_k)^ell, grid r_max = R + Lambda(t_max) - Lambda(t0) + margin.
SolveOutcome solve_transformed(const TransformedProblem& tp, const SolverConfig& cfg);

// Lifespan at `levels` grid refinements (dr halves per level, damped picture);
// returns (T at finest, |T_finest - T_previous|).  Throws std::runtime_error
// naming the level if any fails to blow up by t_max.
std::pair<double, double> estimate_lifespan(const ModelParams& params,
                                            const DataProfile& profile,
                                            const SolverConfig& cfg, int levels);

// Lifespan scaling sweep.  The fit compares against the theorem's exponent,
// which bounds the lifespan of the transformed problem; runs are therefore
// done in the transformed picture (a damped-picture pilot per epsilon sizes
// the horizon through the time map).  Each epsilon is refined once; the
// original-time lifespans follow by lifespan_pullback.
struct EpsilonSweepPoint {
    double epsilon = 0.0;
    double T = 0.0;            // transformed-picture lifespan
    double T_uncertainty = 0.0;
    double T_original = 0.0;   // Lambda(T) - 1
};

struct EpsilonSweepResult {
    PowerLawFit fit;                 // ln T against ln epsilon
    double theoretical_slope = 0.0;  // -lifespan_exponent(params)
    double max_envelope_ratio = 0.0; // max T_i / fitted envelope
    bool bound_consistent = false;   // max_envelope_ratio <= 2
    std::vector<EpsilonSweepPoint> points;
};

EpsilonSweepResult epsilon_sweep(const ModelParams& params, const DataProfile& profile,
                                 const SolverConfig& cfg, std::span<const double> epsilons,
                                 int jobs = 1);

// Discrete free-wave energy  int (u_t^2 + u_r^2) r^{n-1} dr |S^{n-1}| of a
// trajectory frame triple (centered u_t); test instrumentation.
double frame_energy(const Trajectory& traj, size_t i);

}  // namespace sdwave

#endif
