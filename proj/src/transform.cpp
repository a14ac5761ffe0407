#include "sdwave/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace sdwave {

double time_forward(double t, double ell) {
    if (t < 0.0) throw std::domain_error("time_forward: t must be nonnegative");
    if (ell == 0.0) return 1.0 + t;  // keep the identity regime exact
    return std::pow(1.0 + t, ell + 1.0) / (ell + 1.0);
}

double time_inverse(double s, double ell) {
    if (!(s > 0.0)) throw std::domain_error("time_inverse: s must be positive");
    if (ell == 0.0) return s - 1.0;
    return std::pow((ell + 1.0) * s, 1.0 / (ell + 1.0)) - 1.0;
}

double lifespan_pullback(double T_transformed, double ell) {
    return time_forward(T_transformed, ell) - 1.0;
}

namespace {

TransformedProblem make_base(const ModelParams& params) {
    if (!admissible(params)) throw std::domain_error("build_transformed: inadmissible parameters");
    const RegimeConstants rc = regime_constants(params.mu);
    TransformedProblem tp;
    tp.regime = rc.regime;
    tp.n = params.n;
    tp.p = params.p;
    tp.ell = rc.ell;
    tp.t0 = rc.t0;
    tp.speed_exponent = 2.0 * rc.ell;
    const double eps = params.epsilon;
    const double mu = params.mu;
    if (rc.regime == Regime::low) {
        tp.source_exponent = 2.0 * rc.ell;
        tp.pos_coeff0 = eps;
        tp.vel_coeff0 = 0.0;
        tp.vel_coeff1 = (mu == 0.0) ? eps : eps * std::pow(1.0 - mu, -mu);
    } else {
        tp.source_exponent = 2.0 * rc.ell - (params.p - 1.0);
        tp.pos_coeff0 = (mu == 2.0) ? eps : eps * std::pow(mu - 1.0, 1.0 - mu);
        tp.vel_coeff0 = eps;
        tp.vel_coeff1 = eps / (mu - 1.0);
    }
    return tp;
}

}  // namespace

TransformedProblem build_transformed(const ModelParams& params, const DataProfile& profile) {
    profile.validate();
    TransformedProblem tp = make_base(params);
    tp.profile = profile;
    return tp;
}

TransformedProblem build_transformed(const ModelParams& params,
                                     const RadialField& u0, const RadialField& u1) {
    u0.validate();
    u1.validate();
    if (u0.grid.count != u1.grid.count || u0.grid.dr != u1.grid.dr)
        throw std::invalid_argument("build_transformed: data fields on mismatched grids");
    TransformedProblem tp = make_base(params);
    tp.w0.grid = u0.grid;
    tp.w1.grid = u0.grid;
    tp.w0.values.resize(u0.values.size());
    tp.w1.values.resize(u0.values.size());
    for (size_t i = 0; i < u0.values.size(); ++i) {
        tp.w0.values[i] = tp.pos_coeff0 * u0.values[i];
        tp.w1.values[i] = tp.vel_coeff0 * u0.values[i] + tp.vel_coeff1 * u1.values[i];
    }
    return tp;
}

// ---------------------------------------------------------------------------
// Trajectory sampling and pullback
// ---------------------------------------------------------------------------

double Trajectory::first_time() const {
    if (frames.empty()) throw std::out_of_range("Trajectory: no frames");
    return frames.front().t;
}

double Trajectory::last_time() const {
    if (frames.empty()) throw std::out_of_range("Trajectory: no frames");
    return frames.back().t;
}

std::vector<double> Trajectory::sample(double t) const {
    if (frames.size() < 2) throw std::out_of_range("Trajectory::sample: need >= 2 frames");
    if (t < first_time() - 1e-12 || t > last_time() + 1e-12)
        throw std::out_of_range("Trajectory::sample: time outside recorded window");
    size_t hi = 1;
    while (hi + 1 < frames.size() && frames[hi].t < t) ++hi;
    const size_t lo = hi - 1;
    if (frames[lo].values.empty() || frames[hi].values.empty())
        throw std::out_of_range("Trajectory::sample: frames carry no field values");

    // quadratic through (lo-1, lo, hi) or (lo, hi, hi+1) when available
    size_t i0 = lo, i1 = hi, i2 = hi;
    if (hi + 1 < frames.size() && !frames[hi + 1].values.empty()) {
        i2 = hi + 1;
    } else if (lo > 0 && !frames[lo - 1].values.empty()) {
        i2 = i1; i1 = i0; i0 = lo - 1;
    }
    const size_t m = frames[lo].values.size();
    std::vector<double> out(m);
    if (i2 == i1) {  // linear fallback
        const double w = (t - frames[lo].t) / (frames[hi].t - frames[lo].t);
        for (size_t j = 0; j < m; ++j)
            out[j] = (1.0 - w) * frames[lo].values[j] + w * frames[hi].values[j];
        return out;
    }
    const double ta = frames[i0].t, tb = frames[i1].t, tc = frames[i2].t;
    const double la = (t - tb) * (t - tc) / ((ta - tb) * (ta - tc));
    const double lb = (t - ta) * (t - tc) / ((tb - ta) * (tb - tc));
    const double lc = (t - ta) * (t - tb) / ((tc - ta) * (tc - tb));
    for (size_t j = 0; j < m; ++j)
        out[j] = la * frames[i0].values[j] + lb * frames[i1].values[j] + lc * frames[i2].values[j];
    return out;
}

Trajectory pullback_solution(const Trajectory& w_traj, const ModelParams& params,
                             std::span<const double> original_times) {
    if (!w_traj.transformed_picture)
        throw std::invalid_argument("pullback_solution: trajectory is not in the transformed picture");
    const RegimeConstants rc = regime_constants(params.mu);
    Trajectory out;
    out.grid = w_traj.grid;
    out.n = w_traj.n;
    out.p = w_traj.p;
    out.transformed_picture = false;
    out.frames.reserve(original_times.size());
    for (double s : original_times) {
        if (s < 0.0) throw std::out_of_range("pullback_solution: negative original time");
        const double tau = time_inverse(s + 1.0, rc.ell);
        Frame fr;
        fr.t = s;
        fr.values = w_traj.sample(tau);
        if (rc.regime == Regime::high) {
            const double scale = 1.0 / (1.0 + tau);
            for (double& v : fr.values) v *= scale;
        }
        RadialField tmp{out.grid, fr.values};
        fr.sup = sup_abs(fr.values);
        fr.F = radial_integral(tmp, out.n);
        fr.lp = radial_integral_abs_pow(tmp, out.n, out.p);
        fr.support_r = support_radius(tmp);
        out.frames.push_back(std::move(fr));
    }
    return out;
}

}  // namespace sdwave
