#include "sdwave/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sdwave/quadrature.hpp"
#include "sdwave/transform.hpp"

namespace sdwave {

namespace {

// Kahan sum of w_i exp(L_i - M), M = max L_i over nonzero weights.
struct ShiftedSum {
    double shift = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
};

ShiftedSum shifted_weighted_sum(const std::vector<double>& exponents,
                                const std::vector<double>& weights) {
    ShiftedSum out;
    for (size_t i = 0; i < exponents.size(); ++i)
        if (weights[i] != 0.0) out.shift = std::max(out.shift, exponents[i]);
    if (!std::isfinite(out.shift)) {
        out.shift = 0.0;
        return out;
    }
    double c = 0.0;
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (weights[i] == 0.0) continue;
        const double term = weights[i] * std::exp(exponents[i] - out.shift);
        const double y = term - c;
        const double t = out.sum + y;
        c = (t - out.sum) - y;
        out.sum = t;
    }
    return out;
}

std::vector<double> grid_log_phi(const RadialGrid& grid, int n) {
    std::vector<double> lphi(grid.count);
    for (int i = 0; i < grid.count; ++i) lphi[i] = log_phi(grid.r(i), n);
    return lphi;
}

double trap_w(int i, int count) { return (i == 0 || i == count - 1) ? 0.5 : 1.0; }

// int_{|x| <= r_cone} psi^{pp} dx on the grid, via shifted exponentials.
double grid_psi_pow_integral(const RadialGrid& grid, int n, double log_lambda,
                             const std::vector<double>& lphi, double pp, double r_cone) {
    std::vector<double> L, w;
    L.reserve(grid.count);
    w.reserve(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        const double r = grid.r(i);
        if (r > r_cone) break;
        if (i == 0) continue;  // r^{n-1} kills the origin node for n >= 2
        L.push_back(pp * (log_lambda + lphi[i]) + (n - 1) * std::log(r));
        w.push_back(trap_w(i, grid.count));
    }
    const ShiftedSum s = shifted_weighted_sum(L, w);
    return unit_sphere_area(n) * grid.dr * std::exp(s.shift) * s.sum;
}

}  // namespace

double functional_F(const RadialField& field, int n) {
    return radial_integral(field, n);
}

double functional_F1(const RadialField& field, double t, const LambdaWeight& w, int n) {
    if (t < w.t0()) throw std::domain_error("functional_F1: t < t0");
    const std::vector<double> lphi = grid_log_phi(field.grid, n);
    const double ll = w.log_value(t);
    std::vector<double> L, ws;
    L.reserve(field.grid.count);
    ws.reserve(field.grid.count);
    for (int i = 1; i < field.grid.count; ++i) {
        L.push_back(ll + lphi[i] + (n - 1) * std::log(field.grid.r(i)));
        ws.push_back(field.values[i] * trap_w(i, field.grid.count));
    }
    const ShiftedSum s = shifted_weighted_sum(L, ws);
    const double out = unit_sphere_area(n) * field.grid.dr * std::exp(s.shift) * s.sum;
    if (!std::isfinite(out)) throw std::runtime_error("functional_F1: overflow despite log path");
    return out;
}

FunctionalTrace build_trace(const Trajectory& traj, const LambdaWeight& w) {
    FunctionalTrace tr;
    tr.ell = traj.ell;
    tr.t0 = traj.t0;
    const std::vector<double> lphi = grid_log_phi(traj.grid, traj.n);
    for (const Frame& fr : traj.frames) {
        if (fr.values.empty())
            throw std::invalid_argument("build_trace: frames carry no field values");
        const double ll = w.log_value(std::max(fr.t, w.t0()));
        std::vector<double> L, ws;
        for (int i = 1; i < traj.grid.count; ++i) {
            L.push_back(ll + lphi[i] + (traj.n - 1) * std::log(traj.grid.r(i)));
            ws.push_back(fr.values[i] * trap_w(i, traj.grid.count));
        }
        const ShiftedSum s = shifted_weighted_sum(L, ws);
        tr.times.push_back(fr.t);
        tr.F.push_back(fr.F);
        tr.F1.push_back(unit_sphere_area(traj.n) * traj.grid.dr * std::exp(s.shift) * s.sum);
        tr.lp.push_back(fr.lp);
    }
    return tr;
}

double default_t2(double t0) { return 2.0 * t0 + 1.0; }

double check_F1_lower(const FunctionalTrace& trace, double epsilon, double t2) {
    if (!(epsilon > 0.0)) throw std::domain_error("check_F1_lower: epsilon must be positive");
    double out = std::numeric_limits<double>::infinity();
    bool any = false;
    for (size_t i = 0; i < trace.times.size(); ++i) {
        const double t = trace.times[i];
        if (t < t2) continue;
        any = true;
        out = std::min(out, trace.F1[i] * std::pow(t, trace.ell) / epsilon);
    }
    if (!any) throw std::out_of_range("check_F1_lower: empty window (trace ends before t2)");
    return out;
}

double lemma22_ratio(double t, const ModelParams& params, const LambdaWeight& w) {
    if (t <= w.t0()) throw std::domain_error("lemma22_ratio: t must exceed t0");
    const int n = params.n;
    const double p = params.p;
    const double pp = p / (p - 1.0);
    const double phase = w.phase(t);
    const double r_end = params.R + phase;
    const double ll = w.log_value(t);

    // integrand exp(s(r)), s increasing towards r_end; integrate the shifted
    // exponent so panel values live in [0, 1]
    const double shift = pp * (ll + log_phi(r_end, n)) + (n - 1) * std::log(r_end);
    auto f = [&](double r) -> double {
        if (r <= 0.0) return 0.0;
        const double s = pp * (ll + log_phi(r, n)) + (n - 1) * std::log(r);
        return std::exp(s - shift);
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    opt.max_depth = 52;
    const QuadratureResult q = integrate(f, 0.0, r_end, opt);
    if (!q.converged || !(q.value > 0.0) || !std::isfinite(q.value))
        throw std::runtime_error("lemma22_ratio: quadrature failure (value " +
                                 std::to_string(q.value) + ", est err " +
                                 std::to_string(q.error_estimate) + ")");
    const double log_lhs = shift + std::log(q.value);
    const double log_rhs = -(w.ell() * pp / 2.0) * std::log(t) +
                           (n - 1.0 - 0.5 * (n - 1.0) * pp) * std::log(r_end);
    return std::exp(log_lhs - log_rhs);
}

ChainReport check_chain(const Trajectory& traj, const ModelParams& params,
                        const LambdaWeight& w, double t_min) {
    if (!traj.transformed_picture)
        throw std::invalid_argument("check_chain: needs a transformed-picture trajectory");
    const int n = traj.n;
    const double p = traj.p;
    const double ell = traj.ell;
    const double sigma = traj.source_exponent;
    const double eps = params.epsilon;
    const std::vector<double> lphi = grid_log_phi(traj.grid, n);

    ChainReport rep;
    rep.min_c1 = std::numeric_limits<double>::infinity();
    rep.min_c2 = std::numeric_limits<double>::infinity();
    for (const Frame& fr : traj.frames) {
        const double t = fr.t;
        if (t < t_min) continue;
        if (std::abs(fr.F) < 1e-14) {
            ++rep.frames_skipped;
            continue;
        }
        const double Fpp = std::pow(1.0 + t, sigma) * fr.lp;
        const double c1 = Fpp / (std::pow(1.0 + t, 2.0 * ell - n * (ell + 1.0) * (p - 1.0)) *
                                 std::pow(std::abs(fr.F), p));
        const double cone = params.R + time_forward(t, ell);
        const double ipsi = grid_psi_pow_integral(traj.grid, n, w.log_value(t), lphi,
                                                  p / (p - 1.0), cone);
        const double c2 = Fpp * std::pow(ipsi, p - 1.0) * std::pow(t, p * ell - sigma) /
                          std::pow(eps, p);
        rep.min_c1 = std::min(rep.min_c1, c1);
        rep.min_c2 = std::min(rep.min_c2, c2);
        ++rep.frames_used;
    }
    if (rep.frames_used == 0)
        throw std::out_of_range("check_chain: no usable frames past t_min");
    return rep;
}

HoelderReport check_hoelder(const Trajectory& traj, const ModelParams& params,
                            const LambdaWeight& w) {
    if (!traj.transformed_picture)
        throw std::invalid_argument("check_hoelder: needs a transformed-picture trajectory");
    const int n = traj.n;
    const double p = traj.p;
    const std::vector<double> lphi = grid_log_phi(traj.grid, n);

    HoelderReport rep;
    for (const Frame& fr : traj.frames) {
        if (fr.values.empty()) continue;
        if (!(fr.lp > 0.0)) continue;
        const double t = std::max(fr.t, w.t0());
        const double cone = std::min(params.R + time_forward(t, traj.ell),
                                     traj.grid.r_max());
        const double vol = unit_ball_volume(n) * std::pow(cone, n);
        const double r1 = std::pow(std::abs(fr.F), p) / (fr.lp * std::pow(vol, p - 1.0));

        const double ll = w.log_value(t);
        // F1 and int psi^{p'} on the same grid weights
        std::vector<double> L, ws;
        for (int i = 1; i < traj.grid.count; ++i) {
            L.push_back(ll + lphi[i] + (n - 1) * std::log(traj.grid.r(i)));
            ws.push_back(fr.values[i] * trap_w(i, traj.grid.count));
        }
        const ShiftedSum s = shifted_weighted_sum(L, ws);
        const double F1 = unit_sphere_area(n) * traj.grid.dr * std::exp(s.shift) * s.sum;
        const double ipsi = grid_psi_pow_integral(traj.grid, n, ll, lphi, p / (p - 1.0), cone);
        const double r2 = std::pow(std::abs(F1), p) / (fr.lp * std::pow(ipsi, p - 1.0));

        rep.max_ratio_F = std::max(rep.max_ratio_F, r1);
        rep.max_ratio_F1 = std::max(rep.max_ratio_F1, r2);
        ++rep.frames;
    }
    if (rep.frames == 0) throw std::out_of_range("check_hoelder: no frames with fields");
    return rep;
}

}  // namespace sdwave
