#ifndef SDWAVE_ODE_ORACLE_HPP
#define SDWAVE_ODE_ORACLE_HPP

#include <functional>
#include <span>

#include "sdwave/exponents.hpp"
#include "sdwave/fit.hpp"

namespace sdwave {

// Comparison problem of the blow-up lemma:
//   f'' = m (t+R)^{-q} f^p,   f(t_start) = f_init, f'(t_start) = fprime_init,
// with the growth floor f >= delta (t+R)^a.  m = 0 is accepted as a
// degenerate guard (f stays linear); the lemma itself needs m > 0,
// p > 1, a >= 1 and (p-1) a > q - 2.
struct KatoProblem {
    double p = 3.0;
    double a = 1.0;
    double q = 0.0;
    double m = 1.0;
    double R = 1.0;
    double delta = 1.0;
    double t_start = 0.0;
    double f_init = 1.0;
    double fprime_init = 0.0;

    void validate() const;
    bool satisfies_lemma_hypotheses() const;

    // f(t_start) = delta (t_start+R)^a with the envelope's slope.
    static KatoProblem from_envelope(double p, double a, double q, double m,
                                     double R, double delta, double t_start = 0.0);
};

enum class BlowupReason { threshold_collapse, horizon_reached, nonfinite };

struct BlowupReport {
    bool blew_up = false;
    double T_est = 0.0;
    double T_uncertainty = 0.0;
    BlowupReason reason = BlowupReason::horizon_reached;
};

const char* to_string(BlowupReason r);

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
};

// Adaptive RK45 (Dormand-Prince) integration of the equality case.  Blow-up
// is declared once f >= threshold and the accepted step has collapsed; the
// singular time is then extrapolated by fitting t = T - c f^{-(p-1)/2}
// (exact self-similar rate when q = 0) to the last accepted points, and
// T_uncertainty = |T_est - t_last|.
BlowupReport integrate_blowup(const KatoProblem& prob, double threshold, double horizon,
                              const OdeOptions& opt = {});

// Lifespans over a delta sweep with envelope initial data, fitted log-log.
// Throws std::runtime_error naming the first delta that fails to blow up.
PowerLawFit sweep_delta(const KatoProblem& base, std::span<const double> deltas,
                        double threshold, double horizon, const OdeOptions& opt = {});

// Predicted sweep slope of the lemma:  -(p-1)/((p-1)a - q + 2).
double kato_sweep_slope(const KatoProblem& prob);

// p (p-1) / ((p-1) a - q + 2) with (a, q) from kato_parameters: equals
// lifespan_exponent(params) identically for admissible parameters.
double kato_lifespan_exponent(const ModelParams& params);

// Builds the KatoProblem for the model parameters from an F(t) envelope
// (delta = min over a sample grid of F(t)/(t+R)^a, must be positive) and
// integrates it.
BlowupReport verify_kato_link(const ModelParams& params,
                              const std::function<double(double)>& F_envelope,
                              double threshold, double horizon,
                              const OdeOptions& opt = {});

}  // namespace sdwave

#endif
