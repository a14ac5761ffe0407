#include "sdwave/ode_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace sdwave {

void KatoProblem::validate() const {
    if (!(p > 1.0)) throw std::domain_error("KatoProblem: p must exceed 1");
    if (!(m >= 0.0)) throw std::domain_error("KatoProblem: m must be nonnegative");
    if (!(R > 0.0)) throw std::domain_error("KatoProblem: R must be positive");
    if (!(delta > 0.0)) throw std::domain_error("KatoProblem: delta must be positive");
    if (!std::isfinite(f_init) || !std::isfinite(fprime_init))
        throw std::domain_error("KatoProblem: nonfinite initial data");
}

bool KatoProblem::satisfies_lemma_hypotheses() const {
    return p > 1.0 && a >= 1.0 && (p - 1.0) * a > q - 2.0 && m > 0.0 &&
           f_init >= delta * std::pow(t_start + R, a) * (1.0 - 1e-12);
}

KatoProblem KatoProblem::from_envelope(double p, double a, double q, double m,
                                       double R, double delta, double t_start) {
    KatoProblem kp;
    kp.p = p; kp.a = a; kp.q = q; kp.m = m; kp.R = R; kp.delta = delta;
    kp.t_start = t_start;
    kp.f_init = delta * std::pow(t_start + R, a);
    kp.fprime_init = delta * a * std::pow(t_start + R, a - 1.0);
    return kp;
}

const char* to_string(BlowupReason r) {
    switch (r) {
        case BlowupReason::threshold_collapse: return "threshold+collapse";
        case BlowupReason::horizon_reached: return "horizon_reached";
        case BlowupReason::nonfinite: return "nonfinite";
    }
    return "unknown";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

using State = std::array<double, 2>;  // (f, f')

constexpr double kFCap = 1e100;  // keep f^p representable

}  // namespace

BlowupReport integrate_blowup(const KatoProblem& prob, double threshold, double horizon,
                              const OdeOptions& opt) {
    prob.validate();
    if (!(threshold >= 1e6)) throw std::domain_error("integrate_blowup: threshold must be >= 1e6");
    if (!(horizon > prob.t_start)) throw std::domain_error("integrate_blowup: horizon before start");

    auto rhs = [&](double t, const State& y) -> State {
        const double w = prob.m == 0.0 ? 0.0 : prob.m * std::pow(t + prob.R, -prob.q);
        return {y[1], w * std::pow(std::abs(y[0]), prob.p - 1.0) * y[0]};
    };

    double t = prob.t_start;
    State y = {prob.f_init, prob.fprime_init};
    State k1 = rhs(t, y);
    double h = 1e-4 * std::max(1.0, std::abs(t));
    const double tail_floor = std::max(std::sqrt(threshold), 10.0 * std::abs(prob.f_init));
    std::deque<std::pair<double, double>> tail;  // (t, f) near the singularity

    BlowupReport rep;
    bool crossed = false;
    while (t < horizon) {
        h = std::min(h, horizon - t);
        const double h_min = 1e-13 * std::max(1.0, std::abs(t));

        State k2, k3, k4, k5, k6, k7;
        State y5;
        double err;
        {
            State ytmp;
            ytmp = {y[0] + h * a21 * k1[0], y[1] + h * a21 * k1[1]};
            k2 = rhs(t + c2 * h, ytmp);
            ytmp = {y[0] + h * (a31 * k1[0] + a32 * k2[0]), y[1] + h * (a31 * k1[1] + a32 * k2[1])};
            k3 = rhs(t + c3 * h, ytmp);
            ytmp = {y[0] + h * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                    y[1] + h * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])};
            k4 = rhs(t + c4 * h, ytmp);
            ytmp = {y[0] + h * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                    y[1] + h * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])};
            k5 = rhs(t + c5 * h, ytmp);
            ytmp = {y[0] + h * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
                    y[1] + h * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])};
            k6 = rhs(t + h, ytmp);
            y5 = {y[0] + h * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]),
                  y[1] + h * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1])};
            k7 = rhs(t + h, y5);
            double acc = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                       e6 * k6[i] + e7 * k7[i]);
                const double sc = opt.abs_tol +
                                  opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                acc += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(0.5 * acc);
        }

        if (!std::isfinite(err) || !std::isfinite(y5[0])) {
            rep.blew_up = true;
            rep.reason = BlowupReason::nonfinite;
            break;
        }
        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;  // FSAL
            if (std::abs(y[0]) >= tail_floor) {
                tail.emplace_back(t, std::abs(y[0]));
                if (tail.size() > 48) tail.pop_front();
            }
            if (std::abs(y[0]) >= threshold) crossed = true;
            if (crossed && h <= h_min) {
                rep.blew_up = true;
                rep.reason = BlowupReason::threshold_collapse;
                break;
            }
            if (std::abs(y[0]) >= kFCap) {
                rep.blew_up = true;
                rep.reason = BlowupReason::threshold_collapse;
                break;
            }
        }
        const double fact = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h = std::max(h * fact, h_min);
    }

    if (!rep.blew_up) {
        rep.reason = BlowupReason::horizon_reached;
        rep.T_est = t;
        rep.T_uncertainty = 0.0;
        return rep;
    }

    // t_i = T - c f_i^{-(p-1)/2}, least squares for (T, c)
    const double beta_inv = (prob.p - 1.0) / 2.0;
    if (tail.size() >= 3) {
        std::vector<double> xs, ts;
        for (auto& [ti, fi] : tail) {
            xs.push_back(std::pow(fi, -beta_inv));
            ts.push_back(ti);
        }
        const LinearFit lf = fit_line(xs, ts);
        rep.T_est = lf.intercept;
    } else {
        rep.T_est = t;
    }
    rep.T_est = std::max(rep.T_est, t);
    rep.T_uncertainty = std::abs(rep.T_est - t);
    return rep;
}

PowerLawFit sweep_delta(const KatoProblem& base, std::span<const double> deltas,
                        double threshold, double horizon, const OdeOptions& opt) {
    if (deltas.size() < 4) throw std::invalid_argument("sweep_delta: need >= 4 deltas");
    for (size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] > deltas[i - 1]))
            throw std::invalid_argument("sweep_delta: deltas must be sorted ascending");
    if (!(deltas.back() / deltas.front() >= 10.0))
        throw std::invalid_argument("sweep_delta: deltas must span at least one decade");

    std::vector<double> ds, Ts;
    for (double d : deltas) {
        KatoProblem kp = KatoProblem::from_envelope(base.p, base.a, base.q, base.m,
                                                    base.R, d, base.t_start);
        const BlowupReport rep = integrate_blowup(kp, threshold, horizon, opt);
        if (!rep.blew_up)
            throw std::runtime_error("sweep_delta: no blow-up by horizon at delta = " +
                                     std::to_string(d));
        ds.push_back(d);
        Ts.push_back(rep.T_est - base.t_start);
    }
    return fit_power_law(ds, Ts);
}

double kato_sweep_slope(const KatoProblem& prob) {
    return -(prob.p - 1.0) / ((prob.p - 1.0) * prob.a - prob.q + 2.0);
}

double kato_lifespan_exponent(const ModelParams& params) {
    const KatoParams kp = kato_parameters(params);
    return params.p * (params.p - 1.0) / ((params.p - 1.0) * kp.a - kp.q + 2.0);
}

BlowupReport verify_kato_link(const ModelParams& params,
                              const std::function<double(double)>& F_envelope,
                              double threshold, double horizon, const OdeOptions& opt) {
    if (!admissible(params)) throw std::domain_error("verify_kato_link: inadmissible parameters");
    const KatoParams kp = kato_parameters(params);
    // delta from the envelope: the largest constant with F(t) >= delta (t+R)^a
    // on a sample grid
    double delta = std::numeric_limits<double>::infinity();
    const double t_lo = 0.0, t_hi = std::max(1.0, 0.1 * horizon);
    for (int i = 0; i <= 64; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / 64.0;
        const double env = F_envelope(t);
        if (!(env > 0.0)) throw std::domain_error("verify_kato_link: envelope must be positive");
        delta = std::min(delta, env / std::pow(t + params.R, kp.a));
    }
    KatoProblem prob = KatoProblem::from_envelope(params.p, kp.a, kp.q, kp.m,
                                                  params.R, delta);
    prob.f_init = std::max(prob.f_init, F_envelope(0.0));
    return integrate_blowup(prob, threshold, horizon, opt);
}

}  // namespace sdwave
