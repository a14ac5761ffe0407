#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sdwave/radial_solver.hpp"
#include "sdwave/transform.hpp"

namespace sdwave {

CrossCheckResult cross_residual(const ModelParams& params, const DataProfile& profile,
                                const SolverConfig& cfg, double window) {
    if (!(window > 0.0)) throw std::domain_error("cross_residual: window must be positive");

    // direct solve on [0, window], dense frames for time interpolation
    SolverConfig dcfg = cfg;
    dcfg.t_max = window;
    dcfg.output_every = 1;
    dcfg.keep_fields = true;
    const SolveOutcome direct = solve_damped(params, profile, dcfg);
    if (direct.report.blew_up)
        throw std::runtime_error("cross_residual: direct solve blew up inside the window");

    // keep the comparison away from blow-up: sup within 10x the initial size
    const double sup0 = direct.trajectory.frames.front().sup;
    double w_end = window;
    for (const Frame& fr : direct.trajectory.frames) {
        if (fr.sup > 10.0 * sup0) {
            w_end = std::min(w_end, 0.9 * fr.t);
            break;
        }
    }

    const RegimeConstants rc = regime_constants(params.mu);
    const double tau_end = time_inverse(w_end + 1.0, rc.ell);

    const TransformedProblem tp = build_transformed(params, profile);
    SolverConfig tcfg = cfg;
    tcfg.t_max = tau_end + 0.05 * (tau_end - rc.t0) + 1e-3;
    tcfg.output_every = 1;
    tcfg.keep_fields = true;
    const SolveOutcome trans = solve_transformed(tp, tcfg);
    if (trans.report.blew_up)
        throw std::runtime_error("cross_residual: transformed solve blew up inside the window");

    CrossCheckResult res;
    res.window = w_end;
    const auto& dgrid = direct.trajectory.grid;
    const auto& tgrid = trans.trajectory.grid;
    const double r_cone = profile.R + w_end;

    for (int k = 1; k <= 8; ++k) {
        const double ts = w_end * k / 8.0;
        const std::vector<double> ud = direct.trajectory.sample(ts);
        const double tau = time_inverse(ts + 1.0, rc.ell);
        std::vector<double> wt = trans.trajectory.sample(tau);
        const double high_scale = (rc.regime == Regime::high) ? 1.0 / (1.0 + tau) : 1.0;

        for (int i = 0; i < dgrid.count; ++i) {
            const double r = dgrid.r(i);
            if (r > r_cone) break;
            // linear interpolation onto the transformed grid
            const double x = r / tgrid.dr;
            const int j = std::min(static_cast<int>(x), tgrid.count - 2);
            const double frac = x - j;
            const double wv = ((1.0 - frac) * wt[j] + frac * wt[j + 1]) * high_scale;
            res.discrepancy = std::max(res.discrepancy, std::abs(ud[i] - wv));
            ++res.samples;
        }
    }
    return res;
}

}  // namespace sdwave
