#include "sdwave/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sdwave/quadrature.hpp"

namespace sdwave {

namespace {

constexpr double kPi = std::numbers::pi;

// z beyond which exp(-(t cosh z - ln cosh(alpha z))) has underflowed.
double bessel_cutoff(double alpha, double t) {
    const double target = 750.0;
    auto g = [&](double z) { return t * std::cosh(z) - std::log(std::cosh(std::abs(alpha) * z)); };
    double hi = 1.0;
    while (g(hi) < target) hi *= 2.0;
    double lo = 0.5 * hi;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < target ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace

double unit_sphere_area(int n) {
    if (n < 1) throw std::domain_error("unit_sphere_area: n must be >= 1");
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double unit_ball_volume(int n) {
    if (n < 1) throw std::domain_error("unit_ball_volume: n must be >= 1");
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double phi(double r, int n) {
    if (r < 0.0) throw std::domain_error("phi: r must be nonnegative");
    if (n < 2) throw std::domain_error("phi: n must be >= 2");
    if (r == 0.0) return unit_sphere_area(n);
    const double ring = unit_sphere_area(n - 1);  // |S^{n-2}|, = 2 for n = 2
    auto f = [&](double th) {
        return std::exp(r * std::cos(th)) * std::pow(std::sin(th), n - 2);
    };
    const auto q = integrate(f, 0.0, kPi);
    return ring * q.value;
}

double log_phi(double r, int n) {
    if (r < 0.0) throw std::domain_error("log_phi: r must be nonnegative");
    if (n < 2) throw std::domain_error("log_phi: n must be >= 2");
    const double ring = unit_sphere_area(n - 1);
    // shift by the integrand maximum e^r so the panel values stay in [0,1]
    auto f = [&](double th) {
        return std::exp(r * (std::cos(th) - 1.0)) * std::pow(std::sin(th), n - 2);
    };
    const auto q = integrate(f, 0.0, kPi);
    return r + std::log(ring * q.value);
}

double bessel_k_scaled(double alpha, double t) {
    if (!(t > 0.0)) throw std::domain_error("bessel_k: t must be positive");
    const double zmax = bessel_cutoff(alpha, t);
    auto f = [&](double z) {
        return std::exp(-t * (std::cosh(z) - 1.0)) * std::cosh(alpha * z);
    };
    const auto q = integrate(f, 0.0, zmax);
    return q.value;
}

double bessel_k(double alpha, double t) {
    return std::exp(-t) * bessel_k_scaled(alpha, t);
}

double log_bessel_k(double alpha, double t) {
    return -t + std::log(bessel_k_scaled(alpha, t));
}

// ---------------------------------------------------------------------------
// LambdaWeight
// ---------------------------------------------------------------------------

LambdaWeight::LambdaWeight(double ell, double t0) : ell_(ell), t0_(t0) {
    if (!(ell >= 0.0)) throw std::domain_error("LambdaWeight: ell must be nonnegative");
    if (!(t0 >= 0.0)) throw std::domain_error("LambdaWeight: t0 must be nonnegative");
    alpha_ = 1.0 / (2.0 * ell + 2.0);
    c_ell_ = 1.0 / raw(t0);
}

double LambdaWeight::phase(double t) const {
    return std::pow(t, ell_ + 1.0) / (ell_ + 1.0);
}

double LambdaWeight::raw(double t) const {
    if (t == 0.0) {
        // t^{1/2} K_alpha(t^{ell+1}/(ell+1)) -> (1/2) Gamma(alpha) (2(ell+1))^alpha
        return 0.5 * std::tgamma(alpha_) * std::pow(2.0 * (ell_ + 1.0), alpha_);
    }
    const double s = phase(t);
    return std::sqrt(t) * std::exp(-s) * bessel_k_scaled(alpha_, s);
}

double LambdaWeight::log_raw(double t) const {
    if (t == 0.0) return std::log(raw(0.0));
    const double s = phase(t);
    return 0.5 * std::log(t) - s + std::log(bessel_k_scaled(alpha_, s));
}

double LambdaWeight::value(double t) const {
    if (t < t0_) throw std::domain_error("LambdaWeight::value: t < t0");
    return c_ell_ * raw(t);
}

double LambdaWeight::log_value(double t) const {
    if (t < t0_) throw std::domain_error("LambdaWeight::log_value: t < t0");
    return std::log(c_ell_) + log_raw(t);
}

double LambdaWeight::derivative(double t) const {
    if (t < t0_) throw std::domain_error("LambdaWeight::derivative: t < t0");
    if (t == 0.0) t = 1e-300;
    const double s = phase(t);
    const double k0 = bessel_k_scaled(alpha_, s);
    const double km = bessel_k_scaled(alpha_ - 1.0, s);  // K is even in the order
    const double kp = bessel_k_scaled(alpha_ + 1.0, s);
    // d/dt [ t^{1/2} K_a(s(t)) ],  s'(t) = t^ell,  dK_a/ds = -(K_{a-1}+K_{a+1})/2
    return c_ell_ * std::exp(-s) *
           (0.5 / std::sqrt(t) * k0 - 0.5 * std::pow(t, ell_ + 0.5) * (km + kp));
}

double LambdaWeight::ratio(double t) const {
    const double t_min = std::max(t0_, 1e-6);
    if (t < t_min) throw std::domain_error("LambdaWeight::ratio: t below max(t0, 1e-6)");
    const double s = phase(t);
    const double k0 = bessel_k_scaled(alpha_, s);
    const double km = bessel_k_scaled(alpha_ - 1.0, s);
    const double kp = bessel_k_scaled(alpha_ + 1.0, s);
    return (km + kp) / (2.0 * k0) - 0.5 / std::pow(t, ell_ + 1.0);
}

double LambdaWeight::ode_residual(double t, double h) const {
    if (!(h > 0.0)) throw std::domain_error("ode_residual: h must be positive");
    if (t - h < t0_) throw std::domain_error("ode_residual: t - h < t0");
    const double lc = log_value(t);
    const double rp = std::exp(log_value(t + h) - lc);
    const double rm = std::exp(log_value(t - h) - lc);
    return std::abs((rp - 2.0 + rm) / (h * h) - std::pow(t, 2.0 * ell_));
}

double psi(double t, double r, const LambdaWeight& w, int n) {
    return w.value(t) * phi(r, n);
}

}  // namespace sdwave
