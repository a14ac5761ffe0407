#include "sdwave/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace sdwave {

void ModelParams::validate() const {
    if (n < 2) throw std::domain_error("ModelParams: n must be >= 2");
    if (!(mu >= 0.0 && mu <= 2.0)) throw std::domain_error("ModelParams: mu must lie in [0,2]");
    if (mu == 1.0) throw std::domain_error("ModelParams: mu = 1 is excluded");
    if (!(p > 1.0)) throw std::domain_error("ModelParams: p must exceed 1");
    if (!(epsilon > 0.0)) throw std::domain_error("ModelParams: epsilon must be positive");
    if (!(R > 0.0)) throw std::domain_error("ModelParams: R must be positive");
}

double strauss_exponent(double k) {
    if (!(k > 1.0)) throw std::domain_error("strauss_exponent: k must exceed 1");
    // (k-1)p^2 - (k+1)p - 2 = 0.  The larger root via the sign-matched form:
    // no cancellation since -b = k+1 > 0.
    const double a = k - 1.0;
    const double b = -(k + 1.0);
    const double c = -2.0;
    const double disc = b * b - 4.0 * a * c;
    const double qf = -0.5 * (b - std::sqrt(disc));  // b < 0
    return qf / a;
}

double fujita_exponent(int n) {
    if (n < 1) throw std::domain_error("fujita_exponent: n must be >= 1");
    return 1.0 + 2.0 / static_cast<double>(n);
}

double strauss_residual(double k, double p) {
    return (k - 1.0) * p * p - (k + 1.0) * p - 2.0;
}

bool admissible(int n, double mu, double p) {
    if (n < 2) return false;
    if (!(mu >= 0.0 && mu <= 2.0) || mu == 1.0) return false;
    if (!(p > 1.0)) return false;
    return p < strauss_exponent(static_cast<double>(n) + mu);
}

bool admissible(const ModelParams& params) {
    if (!(params.epsilon > 0.0) || !(params.R > 0.0)) return false;
    return admissible(params.n, params.mu, params.p);
}

double lifespan_exponent(const ModelParams& params) {
    if (!admissible(params)) throw std::domain_error("lifespan_exponent: inadmissible parameters");
    const double n = params.n, mu = params.mu, p = params.p;
    const double denom = 2.0 + (n + mu + 1.0) * p - (n + mu - 1.0) * p * p;
    if (!(denom > 0.0)) throw std::domain_error("lifespan_exponent: nonpositive denominator (p >= p_S(n+mu))");
    return 2.0 * p * (p - 1.0) * std::abs(1.0 - mu) / denom;
}

RegimeConstants regime_constants(double mu) {
    if (!(mu >= 0.0 && mu <= 2.0)) throw std::domain_error("regime_constants: mu outside [0,2]");
    if (mu == 1.0) throw std::domain_error("regime_constants: mu = 1 is excluded");
    RegimeConstants rc{};
    if (mu < 1.0) {
        rc.regime = Regime::low;
        rc.ell = mu / (1.0 - mu);
        rc.t0 = (mu == 0.0) ? 0.0 : std::pow(1.0 - mu, mu - 1.0) - 1.0;
    } else {
        rc.regime = Regime::high;
        rc.ell = (2.0 - mu) / (mu - 1.0);
        rc.t0 = (mu == 2.0) ? 0.0 : std::pow(mu - 1.0, 1.0 - mu) - 1.0;
    }
    return rc;
}

KatoParams kato_parameters_raw(int n, double mu, double p) {
    const double nn = n;
    KatoParams kp{};
    if (mu < 1.0) {
        kp.a = (2.0 + 2.0 * nn - p * (nn + mu - 1.0)) / (2.0 * (1.0 - mu));
        kp.q = (2.0 * mu + nn - nn * p) / (mu - 1.0);
    } else {
        kp.a = (2.0 * mu + 2.0 * nn - (nn + mu - 1.0) * p) / (2.0 * (mu - 1.0));
        kp.q = -(3.0 + nn - mu + (1.0 - nn - mu) * p) / (mu - 1.0);
    }
    return kp;
}

KatoParams kato_parameters(const ModelParams& params) {
    if (!admissible(params)) throw std::domain_error("kato_parameters: inadmissible parameters");
    return kato_parameters_raw(params.n, params.mu, params.p);
}

}  // namespace sdwave
