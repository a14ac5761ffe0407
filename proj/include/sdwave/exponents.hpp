#ifndef SDWAVE_EXPONENTS_HPP
#define SDWAVE_EXPONENTS_HPP

namespace sdwave {

// Parameters of the Cauchy problem  u_tt - Lap u + mu/(1+t) u_t = |u|^p
// with data  u(0) = eps*u0, u_t(0) = eps*u1  supported in {|x| <= R}.
struct ModelParams {
    int n = 2;            // spatial dimension, >= 2
    double mu = 0.5;      // damping coefficient, in [0,2], mu != 1
    double p = 2.0;       // nonlinearity power, > 1
    double epsilon = 1.0; // data amplitude, > 0
    double R = 1.0;       // data support radius, > 0

    void validate() const;  // throws std::domain_error on violated bounds
};

enum class Regime { low, high };  // low: mu < 1, high: mu > 1

struct RegimeConstants {
    double ell;  // low: mu/(1-mu), high: (2-mu)/(mu-1)
    double t0;   // transformed initial time, Lambda(t0) = 1
    Regime regime;
};

struct KatoParams {
    double a;        // growth exponent of the F(t) lower envelope
    double q;        // weight exponent in f'' >= m (t+R)^{-q} f^p
    double m = 1.0;  // comparison constant (not pinned by the estimates)
};

// Positive root of (k-1) p^2 - (k+1) p - 2 = 0, k > 1.
double strauss_exponent(double k);

// 1 + 2/n, n >= 1.
double fujita_exponent(int n);

// Blow-up admissibility: n >= 2, mu in [0,2]\{1}, 1 < p < p_S(n+mu).
bool admissible(int n, double mu, double p);
bool admissible(const ModelParams& params);

// Exponent k in the lifespan bound T <= C eps^{-k}; requires admissible params.
double lifespan_exponent(const ModelParams& params);

// ell and t0 for the two damping regimes; mu in [0,2]\{1}.
RegimeConstants regime_constants(double mu);

// (a, q) for the comparison ODE, by regime.  The unchecked variant evaluates
// the closed forms for any mu in [0,2]\{1} and p > 1 (used by the equivalence
// sampling); the checked one requires admissibility.
KatoParams kato_parameters_raw(int n, double mu, double p);
KatoParams kato_parameters(const ModelParams& params);

// Residual of the defining quadratic at (k, p).
double strauss_residual(double k, double p);

}  // namespace sdwave

#endif
