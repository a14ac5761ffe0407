#ifndef SDWAVE_SPECFUN_HPP
#define SDWAVE_SPECFUN_HPP

#include "sdwave/exponents.hpp"

namespace sdwave {

// Surface measure of the unit (n-1)-sphere.
double unit_sphere_area(int n);

// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

// Spherical exponential mean  phi(r) = int_{S^{n-1}} e^{x.omega} domega, |x| = r.
// Evaluated as |S^{n-2}| int_0^pi e^{r cos th} sin^{n-2} th dth by adaptive
// quadrature.  phi(0) = |S^{n-1}|, phi is positive and increasing, and
// phi(r) ~ (2 pi)^{(n-1)/2} r^{-(n-1)/2} e^r for large r.
double phi(double r, int n);

// ln phi(r); usable far beyond the overflow range of phi itself.
double log_phi(double r, int n);

// Modified Bessel function of the second kind via the integral representation
//   K_alpha(t) = int_0^inf e^{-t cosh z} cosh(alpha z) dz,  t > 0.
// The tail is truncated where t cosh(z) - ln cosh(alpha z) >= 750.
double bessel_k(double alpha, double t);

// e^t K_alpha(t): stays in range for large t.
double bessel_k_scaled(double alpha, double t);

// ln K_alpha(t).
double log_bessel_k(double alpha, double t);

// Time weight  lambda(t) = C_ell t^{1/2} K_{1/(2 ell + 2)}(t^{ell+1}/(ell+1))
// normalized so lambda(t0) = 1.  Solves lambda'' - t^{2 ell} lambda = 0 with
// lambda(inf) = 0; lambda and -lambda' are positive and decreasing.
class LambdaWeight {
  public:
    LambdaWeight(double ell, double t0);
    static LambdaWeight from_regime(const RegimeConstants& rc) { return {rc.ell, rc.t0}; }

    double ell() const { return ell_; }
    double t0() const { return t0_; }
    double normalization() const { return c_ell_; }

    // Bessel argument  t^{ell+1}/(ell+1); the phase of lambda's decay.
    double phase(double t) const;

    double value(double t) const;       // lambda(t),    t >= t0
    double log_value(double t) const;   // ln lambda(t)
    double derivative(double t) const;  // lambda'(t) via dK_a/ds = -(K_{a-1}+K_{a+1})/2
    double ratio(double t) const;       // -lambda'(t) / (lambda(t) t^ell)

    // |(lambda(t+h) - 2 lambda(t) + lambda(t-h))/h^2 - t^{2ell} lambda(t)| / lambda(t)
    double ode_residual(double t, double h) const;

    // test hook: scales C_ell (fault injection for the verify suite)
    void perturb_normalization(double factor) { c_ell_ *= factor; }

  private:
    double raw(double t) const;      // t^{1/2} K_alpha(phase(t)), limit at t=0
    double log_raw(double t) const;
    double ell_;
    double t0_;
    double alpha_;
    double c_ell_;
};

// Test function of the proof: psi(t, x) = lambda(t) phi(|x|).
double psi(double t, double r, const LambdaWeight& w, int n);

}  // namespace sdwave

#endif
