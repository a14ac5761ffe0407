#include "sdwave/radial_solver.hpp"

#include "sdwave/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

namespace sdwave {

namespace {

// Time-dependent coefficients of the kernel equation
//   v_tt - c(t)^2 Lap_r v + d(t) v_t = g(t) |v|^p.
struct Coefficients {
    double ell = 0.0;          // speed (1+t)^ell; ell = 0 bypasses pow
    double mu = 0.0;           // damping mu/(1+t); 0 disables
    double source_exponent = 0.0;

    double speed(double t) const { return ell == 0.0 ? 1.0 : std::pow(1.0 + t, ell); }
    double damping(double t) const { return mu == 0.0 ? 0.0 : mu / (1.0 + t); }
    double source(double t) const {
        return source_exponent == 0.0 ? 1.0 : std::pow(1.0 + t, source_exponent);
    }
};

// Origin stability: the ghost-node Laplacian limit n u_rr sharpens the CFL
// bound to dt <= dr sqrt(2/n); clamp below it.
double stable_dt_factor(double cfl, int n) {
    return std::min(cfl, 0.98 * std::sqrt(2.0 / n));
}

void apply_laplacian(const std::vector<double>& v, std::vector<double>& out,
                     double dr, int n, const std::vector<double>& inv_r) {
    const int count = static_cast<int>(v.size());
    const double inv_dr2 = 1.0 / (dr * dr);
    out[0] = n * 2.0 * (v[1] - v[0]) * inv_dr2;  // symmetry ghost u_{-1} = u_1
    for (int i = 1; i < count - 1; ++i) {
        out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_dr2 +
                 (n - 1) * inv_r[i] * (v[i + 1] - v[i - 1]) / (2.0 * dr);
    }
    out[count - 1] = 0.0;  // Dirichlet
}

struct KernelSetup {
    RadialGrid grid;
    int n;
    double p;
    double t_start;
    Coefficients coeff;
    std::vector<double> v0;   // v(t_start)
    std::vector<double> v1;   // v_t(t_start)
};

SolveOutcome run_kernel(const KernelSetup& setup, const SolverConfig& cfg,
                        bool transformed, double ell, double t0) {
    const RadialGrid grid = setup.grid;
    const int count = grid.count;
    const double dr = grid.dr;
    const int n = setup.n;
    const double p = setup.p;
    const Coefficients& co = setup.coeff;
    const double dt_factor = stable_dt_factor(cfg.cfl, n);

    std::vector<double> inv_r(count, 0.0);
    for (int i = 1; i < count; ++i) inv_r[i] = 1.0 / grid.r(i);

    SolveOutcome out;
    Trajectory& traj = out.trajectory;
    traj.grid = grid;
    traj.n = n;
    traj.p = p;
    traj.ell = ell;
    traj.t0 = t0;
    traj.source_exponent = co.source_exponent;
    traj.transformed_picture = transformed;

    std::vector<double> lap(count), vm = setup.v0, v0(count), vp(count);

    auto push_frame = [&](double t, const std::vector<double>& v) {
        Frame fr;
        fr.t = t;
        RadialField tmp{grid, v};
        fr.sup = sup_abs(v);
        fr.F = radial_integral(tmp, n);
        fr.lp = radial_integral_abs_pow(tmp, n, p);
        fr.support_r = support_radius(tmp);
        if (cfg.keep_fields) fr.values = v;
        traj.frames.push_back(std::move(fr));
    };

    // first step by Taylor expansion (second order)
    double t_prev = setup.t_start;
    apply_laplacian(vm, lap, dr, n, inv_r);
    {
        const double c2 = co.speed(t_prev) * co.speed(t_prev);
        const double d = co.damping(t_prev);
        const double g = co.source(t_prev);
        const double dt0 = dt_factor * dr / co.speed(t_prev);
        for (int i = 0; i < count; ++i) {
            double acc = c2 * lap[i] - d * setup.v1[i];
            if (cfg.source_enabled) acc += g * std::pow(std::abs(vm[i]), p);
            v0[i] = vm[i] + dt0 * setup.v1[i] + 0.5 * dt0 * dt0 * acc;
        }
        v0[count - 1] = 0.0;
        push_frame(t_prev, vm);
        t_prev = setup.t_start;
    }
    double t_cur = setup.t_start + dt_factor * dr / co.speed(setup.t_start);
    push_frame(t_cur, v0);

    const double threshold = cfg.blowup_threshold;
    const double tail_floor = std::max(std::sqrt(threshold), 20.0 * std::max(sup_abs(vm), 1e-30));
    std::deque<std::pair<double, double>> tail;

    BlowupReport& rep = out.report;
    rep.blew_up = false;
    rep.reason = BlowupReason::horizon_reached;

    long step = 1;
    double last_finite_t = t_cur;
    while (t_cur < cfg.t_max) {
        const double dt_m = t_cur - t_prev;
        double dt_p = dt_factor * dr / co.speed(t_cur);
        if (t_cur + dt_p > cfg.t_max) dt_p = cfg.t_max - t_cur + 1e-14;
        const double S = dt_p + dt_m;
        const double P = dt_p * dt_m;
        const double d = co.damping(t_cur);
        const double c2 = co.speed(t_cur) * co.speed(t_cur);
        const double g = co.source(t_cur);

        apply_laplacian(v0, lap, dr, n, inv_r);
        const double denom = 2.0 * dt_m / P + d;
        for (int i = 0; i < count; ++i) {
            double rhs = c2 * lap[i];
            if (cfg.source_enabled) rhs += g * std::pow(std::abs(v0[i]), p);
            vp[i] = (S * rhs + (2.0 * S * v0[i] - 2.0 * dt_p * vm[i]) / P + d * vm[i]) / denom;
        }
        vp[count - 1] = 0.0;

        std::swap(vm, v0);
        std::swap(v0, vp);
        t_prev = t_cur;
        t_cur += dt_p;
        ++step;

        const double m = sup_abs(v0);
        if (!std::isfinite(m)) {
            rep.blew_up = true;
            rep.reason = BlowupReason::nonfinite;
            break;
        }
        last_finite_t = t_cur;
        if (m > tail_floor) {
            tail.emplace_back(t_cur, m);
            if (tail.size() > 24) tail.pop_front();
        }
        if (step % cfg.output_every == 0) push_frame(t_cur, v0);
        if (m >= threshold) {
            rep.blew_up = true;
            rep.reason = BlowupReason::threshold_collapse;
            break;
        }
    }
    if (traj.frames.back().t != std::min(t_cur, last_finite_t) && std::isfinite(sup_abs(v0)))
        push_frame(t_cur, v0);

    if (rep.blew_up) {
        // t_i = T - c sup_i^{-(p-1)/2} over the terminal layer
        const double beta_inv = (p - 1.0) / 2.0;
        if (tail.size() >= 3) {
            std::vector<double> xs, ts;
            for (auto& [ti, mi] : tail) {
                xs.push_back(std::pow(mi, -beta_inv));
                ts.push_back(ti);
            }
            const LinearFit lf = fit_line(xs, ts);
            rep.T_est = std::max(lf.intercept, last_finite_t);
        } else {
            rep.T_est = last_finite_t;
        }
        rep.T_uncertainty = rep.T_est - last_finite_t;
    } else {
        rep.T_est = t_cur;
        rep.T_uncertainty = 0.0;
    }
    return out;
}

std::vector<double> sample_profile(const RadialGrid& grid,
                                   const std::function<double(double)>& f) {
    std::vector<double> v(grid.count);
    for (int i = 0; i < grid.count; ++i) v[i] = f(grid.r(i));
    return v;
}

}  // namespace

SolveOutcome solve_damped(const ModelParams& params, const DataProfile& profile,
                          const SolverConfig& cfg) {
    params.validate();
    profile.validate();
    cfg.validate();

    KernelSetup setup;
    setup.n = params.n;
    setup.p = params.p;
    setup.t_start = 0.0;
    setup.coeff.ell = 0.0;
    setup.coeff.mu = params.mu;
    setup.coeff.source_exponent = 0.0;

    const double r_max = profile.R + cfg.t_max + cfg.margin;
    setup.grid.count = cfg.count;
    setup.grid.dr = r_max / (cfg.count - 1);
    setup.grid.validate();

    const double eps = params.epsilon;
    setup.v0 = sample_profile(setup.grid, [&](double r) { return eps * profile.position(r); });
    setup.v1 = sample_profile(setup.grid, [&](double r) { return eps * profile.velocity(r); });
    return run_kernel(setup, cfg, false, 0.0, 0.0);
}

SolveOutcome solve_transformed(const TransformedProblem& tp, const SolverConfig& cfg) {
    cfg.validate();
    if (!(cfg.t_max > tp.t0))
        throw std::domain_error("solve_transformed: t_max must exceed t0");

    KernelSetup setup;
    setup.n = tp.n;
    setup.p = tp.p;
    setup.t_start = tp.t0;
    setup.coeff.ell = tp.ell;
    setup.coeff.mu = 0.0;
    setup.coeff.source_exponent = tp.source_exponent;

    const double cone = time_forward(cfg.t_max, tp.ell) - time_forward(tp.t0, tp.ell);
    const double r_max = tp.profile.R + cone + cfg.margin;
    setup.grid.count = cfg.count;
    setup.grid.dr = r_max / (cfg.count - 1);
    setup.grid.validate();

    if (!tp.w0.values.empty()) {
        if (tp.w0.grid.count != setup.grid.count || tp.w0.grid.dr != setup.grid.dr)
            throw std::invalid_argument("solve_transformed: sampled data grid mismatch");
        setup.v0 = tp.w0.values;
        setup.v1 = tp.w1.values;
    } else {
        setup.v0 = sample_profile(setup.grid, [&](double r) {
            return tp.pos_coeff0 * tp.profile.position(r);
        });
        setup.v1 = sample_profile(setup.grid, [&](double r) {
            return tp.vel_coeff0 * tp.profile.position(r) + tp.vel_coeff1 * tp.profile.velocity(r);
        });
    }
    return run_kernel(setup, cfg, true, tp.ell, tp.t0);
}

std::pair<double, double> estimate_lifespan(const ModelParams& params,
                                            const DataProfile& profile,
                                            const SolverConfig& cfg, int levels) {
    if (levels < 2) throw std::invalid_argument("estimate_lifespan: need >= 2 levels");
    double T_prev = 0.0, T_cur = 0.0;
    for (int lev = 0; lev < levels; ++lev) {
        SolverConfig c = cfg;
        c.count = cfg.count << lev;
        c.keep_fields = false;
        const SolveOutcome o = solve_damped(params, profile, c);
        if (!o.report.blew_up)
            throw std::runtime_error("estimate_lifespan: no blow-up by t_max at level " +
                                     std::to_string(lev));
        T_prev = T_cur;
        T_cur = o.report.T_est;
    }
    return {T_cur, std::abs(T_cur - T_prev)};
}

EpsilonSweepResult epsilon_sweep(const ModelParams& params, const DataProfile& profile,
                                 const SolverConfig& cfg, std::span<const double> epsilons,
                                 int jobs) {
    if (epsilons.size() < 4)
        throw std::invalid_argument("epsilon_sweep: need >= 4 epsilon values");
    {
        auto [lo, hi] = std::minmax_element(epsilons.begin(), epsilons.end());
        if (!(*lo > 0.0) || !(*hi / *lo >= std::sqrt(10.0)))
            throw std::invalid_argument("epsilon_sweep: epsilons must span >= half a decade");
    }
    if (!admissible(params)) throw std::domain_error("epsilon_sweep: inadmissible parameters");

    const RegimeConstants rc = regime_constants(params.mu);
    EpsilonSweepResult res;
    res.theoretical_slope = -lifespan_exponent(params);
    res.points.resize(epsilons.size());

    auto run_one = [&](size_t idx) {
        ModelParams pp = params;
        pp.epsilon = epsilons[idx];

        // damped-picture pilot on a coarse grid bounds the horizon cheaply
        SolverConfig pilot_cfg = cfg;
        pilot_cfg.count = std::max(512, cfg.count / 4);
        pilot_cfg.t_max = cfg.t_max;
        pilot_cfg.keep_fields = false;
        const SolveOutcome pilot = solve_damped(pp, profile, pilot_cfg);
        if (!pilot.report.blew_up)
            throw std::runtime_error("epsilon_sweep: no blow-up by t_max at epsilon = " +
                                     std::to_string(epsilons[idx]));
        const double Tw_guess = time_inverse(pilot.report.T_est + 1.0, rc.ell);

        const TransformedProblem tp = build_transformed(pp, profile);
        double T_prev = 0.0, T_cur = 0.0;
        for (int lev = 0; lev < 2; ++lev) {
            SolverConfig c = cfg;
            c.count = cfg.count << lev;
            c.t_max = 1.2 * Tw_guess + 1.0;
            c.keep_fields = false;
            const SolveOutcome o = solve_transformed(tp, c);
            if (!o.report.blew_up)
                throw std::runtime_error("epsilon_sweep: no blow-up by t_max at epsilon = " +
                                         std::to_string(epsilons[idx]));
            T_prev = T_cur;
            T_cur = o.report.T_est;
        }
        EpsilonSweepPoint& pt = res.points[idx];
        pt.epsilon = epsilons[idx];
        pt.T = T_cur;
        pt.T_uncertainty = std::abs(T_cur - T_prev);
        pt.T_original = lifespan_pullback(T_cur, rc.ell);
    };

    if (jobs <= 1) {
        for (size_t i = 0; i < epsilons.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        std::vector<std::exception_ptr> errors(epsilons.size());
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < epsilons.size(); i = next.fetch_add(1)) {
                    try {
                        run_one(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<double> xs, ys;
    for (const auto& pt : res.points) {
        xs.push_back(pt.epsilon);
        ys.push_back(pt.T);
    }
    res.fit = fit_power_law(xs, ys);
    res.max_envelope_ratio = 0.0;
    for (const auto& pt : res.points)
        res.max_envelope_ratio = std::max(res.max_envelope_ratio,
                                          pt.T / res.fit.envelope(pt.epsilon));
    res.bound_consistent = res.max_envelope_ratio <= 2.0;
    return res;
}

double frame_energy(const Trajectory& traj, size_t i) {
    if (i == 0 || i + 1 >= traj.frames.size())
        throw std::out_of_range("frame_energy: need interior frame");
    const Frame& fm = traj.frames[i - 1];
    const Frame& f0 = traj.frames[i];
    const Frame& fp = traj.frames[i + 1];
    if (f0.values.empty()) throw std::invalid_argument("frame_energy: frames carry no fields");
    const double dr = traj.grid.dr;
    const int count = traj.grid.count;
    const double inv_dt = 1.0 / (fp.t - fm.t);
    double acc = 0.0;
    for (int j = 0; j < count; ++j) {
        const double ut = (fp.values[j] - fm.values[j]) * inv_dt;
        double ur;
        if (j == 0)
            ur = (f0.values[1] - f0.values[0]) / dr;
        else if (j == count - 1)
            ur = (f0.values[j] - f0.values[j - 1]) / dr;
        else
            ur = (f0.values[j + 1] - f0.values[j - 1]) / (2.0 * dr);
        const double w = (j == 0 || j == count - 1) ? 0.5 : 1.0;
        acc += w * (ut * ut + ur * ur) * std::pow(traj.grid.r(j), traj.n - 1);
    }
    return unit_sphere_area(traj.n) * acc * dr;
}

}  // namespace sdwave
