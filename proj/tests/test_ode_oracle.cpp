#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "sdwave/ode_oracle.hpp"
#include "sdwave/quadrature.hpp"

using namespace sdwave;

namespace {

// Independent lifespan oracle for f'' = m f^p by the energy integral:
//   f'^2 = f'_0^2 + 2m (f^{p+1} - f_0^{p+1})/(p+1),
//   T = int_{f0}^inf df / f'.
// Substituting f = 1/u removes the improper endpoint.
double lifespan_energy_oracle(double p, double m, double f0, double fp0) {
    auto speed = [&](double f) {
        return std::sqrt(fp0 * fp0 +
                         2.0 * m * (std::pow(f, p + 1.0) - std::pow(f0, p + 1.0)) / (p + 1.0));
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-12;
    auto integrand = [&](double u) {
        const double f = 1.0 / u;
        return 1.0 / (u * u * speed(f));
    };
    return integrate(integrand, 0.0, 1.0 / f0, opt).value;
}

}  // namespace

TEST_CASE("exact blow-up family f'' = f^3") {
    // f = sqrt(2)/(T0 - t): data (sqrt2/T0, sqrt2/T0^2), lifespan exactly T0
    for (double T0 : {1.0, 2.0}) {
        KatoProblem kp;
        kp.p = 3.0; kp.q = 0.0; kp.m = 1.0; kp.R = 1.0; kp.delta = 1.0;
        kp.f_init = std::sqrt(2.0) / T0;
        kp.fprime_init = std::sqrt(2.0) / (T0 * T0);
        const BlowupReport r = integrate_blowup(kp, 1e6, 10.0 * T0);
        CHECK(r.blew_up);
        CHECK(r.reason == BlowupReason::threshold_collapse);
        CHECK(std::abs(r.T_est - T0) <= 0.01 * T0);
        CHECK(r.T_uncertainty >= 0.0);
    }
    // delta-parameterized: T = sqrt(2)/delta
    for (double delta : {0.5, 1.0, 2.0}) {
        KatoProblem kp;
        kp.p = 3.0; kp.q = 0.0; kp.m = 1.0; kp.R = 1.0; kp.delta = delta;
        kp.f_init = delta;
        kp.fprime_init = delta * delta / std::sqrt(2.0);
        const BlowupReport r = integrate_blowup(kp, 1e6, 50.0);
        CHECK(r.blew_up);
        CHECK(std::abs(r.T_est - std::sqrt(2.0) / delta) <= 0.01 * std::sqrt(2.0) / delta);
    }
}

TEST_CASE("degenerate m = 0 stays linear to the horizon") {
    KatoProblem kp;
    kp.p = 3.0; kp.m = 0.0; kp.delta = 1.0; kp.f_init = 1.0; kp.fprime_init = 1.0;
    const BlowupReport r = integrate_blowup(kp, 1e6, 20.0);
    CHECK_FALSE(r.blew_up);
    CHECK(r.reason == BlowupReason::horizon_reached);
}

TEST_CASE("envelope runs match the energy-integral oracle") {
    for (double delta : {1e-3, 1e-2, 0.1, 1.0}) {
        const KatoProblem kp = KatoProblem::from_envelope(3.0, 1.0, 0.0, 1.0, 1.0, delta);
        const double T_ref = lifespan_energy_oracle(3.0, 1.0, kp.f_init, kp.fprime_init);
        const BlowupReport r = integrate_blowup(kp, 1e6, 2.0 * T_ref + 10.0);
        CHECK(r.blew_up);
        CHECK(std::abs(r.T_est - T_ref) <= 5e-3 * T_ref);
    }
}

TEST_CASE("threshold independence and tolerance refinement stability") {
    const KatoProblem kp = KatoProblem::from_envelope(3.0, 1.0, 0.0, 1.0, 1.0, 0.01);
    const BlowupReport r6 = integrate_blowup(kp, 1e6, 400.0);
    const BlowupReport r9 = integrate_blowup(kp, 1e9, 400.0);
    CHECK(std::abs(r6.T_est - r9.T_est) <= 1e-3 * r6.T_est);
    OdeOptions half;
    half.rel_tol = 5e-11;
    half.abs_tol = 5e-13;
    const BlowupReport rh = integrate_blowup(kp, 1e6, 400.0, half);
    CHECK(std::abs(rh.T_est - r6.T_est) <= r6.T_uncertainty + 1e-9 * r6.T_est);
}

TEST_CASE("delta sweep on the asymptotic range recovers the lemma slope") {
    KatoProblem base;
    base.p = 3.0; base.a = 1.0; base.q = 0.0; base.m = 1.0; base.R = 1.0;
    const std::vector<double> deltas{1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2};
    const PowerLawFit f = sweep_delta(base, deltas, 1e6, 5000.0);
    const double predicted = kato_sweep_slope(base);
    CHECK(predicted == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(std::abs(f.slope - predicted) <= 0.1 * std::abs(predicted));
    CHECK(f.r_squared > 0.999);
}

TEST_CASE("wide-range sweep matches the oracle fit and respects the upper bound") {
    // On delta in [0.01, 1] the finite-delta transient steepens the local
    // slope well beyond the asymptotic -1/2 (oracle gives about -0.60); the
    // lemma's content is the upper bound T <= C delta^{-1/2}, which holds
    // with C = lim_{delta -> 0} T sqrt(delta).
    KatoProblem base;
    base.p = 3.0; base.a = 1.0; base.q = 0.0; base.m = 1.0; base.R = 1.0;
    const std::vector<double> deltas{0.01, 0.0316, 0.1, 0.316, 1.0};
    const PowerLawFit f = sweep_delta(base, deltas, 1e6, 500.0);

    std::vector<double> T_ref;
    for (double d : deltas) {
        const KatoProblem kp = KatoProblem::from_envelope(3.0, 1.0, 0.0, 1.0, 1.0, d);
        T_ref.push_back(lifespan_energy_oracle(3.0, 1.0, kp.f_init, kp.fprime_init));
    }
    const PowerLawFit f_ref = fit_power_law(deltas, T_ref);
    CHECK(std::abs(f.slope - f_ref.slope) <= 0.02 * std::abs(f_ref.slope));
    CHECK(f.slope < -0.5);  // steeper than asymptotic, consistent with the bound

    // upper-bound constant from the asymptotic regime covers the whole range
    const KatoProblem tiny = KatoProblem::from_envelope(3.0, 1.0, 0.0, 1.0, 1.0, 1e-6);
    const double C = lifespan_energy_oracle(3.0, 1.0, tiny.f_init, tiny.fprime_init) * 1e-3;
    for (size_t i = 0; i < deltas.size(); ++i)
        CHECK(T_ref[i] * std::sqrt(deltas[i]) <= C * (1.0 + 1e-6));
}

TEST_CASE("lifespan decreases with the envelope size") {
    KatoProblem base;
    base.p = 3.0; base.a = 1.0; base.q = 0.0; base.m = 1.0; base.R = 1.0;
    const std::vector<double> deltas{1e-3, 1e-2, 0.1, 1.0};
    const PowerLawFit f = sweep_delta(base, deltas, 1e6, 2000.0);
    CHECK(f.slope < 0.0);
    double prev = 1e300;
    for (const auto& [lx, ly] : f.samples) {
        CHECK(std::exp(ly) < prev);
        prev = std::exp(ly);
    }
}

TEST_CASE("sweep validation errors") {
    KatoProblem base;
    base.p = 3.0; base.a = 1.0; base.q = 0.0; base.m = 1.0; base.R = 1.0;
    std::vector<double> few{0.1, 1.0};
    CHECK_THROWS_AS(sweep_delta(base, few, 1e6, 100.0), std::invalid_argument);
    std::vector<double> unsorted{1.0, 0.1, 0.01, 0.5};
    CHECK_THROWS_AS(sweep_delta(base, unsorted, 1e6, 100.0), std::invalid_argument);
    std::vector<double> narrow{0.1, 0.2, 0.3, 0.4};
    CHECK_THROWS_AS(sweep_delta(base, narrow, 1e6, 100.0), std::invalid_argument);
    // no blow-up by a hopeless horizon names the offending delta
    KatoProblem flat = base;
    flat.m = 0.0;
    std::vector<double> ok{0.01, 0.1, 1.0, 10.0};
    CHECK_THROWS_WITH_AS(sweep_delta(flat, ok, 1e6, 5.0),
                         doctest::Contains("delta"), std::runtime_error);
}

TEST_CASE("kato link identity equals the lifespan exponent") {
    CHECK(kato_lifespan_exponent({2, 0.5, 2.0, 1.0, 1.0}) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(kato_lifespan_exponent({3, 0.5, 2.0, 1.0, 1.0}) ==
          doctest::Approx(2.0).epsilon(1e-13));
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> dn(2, 6);
    std::uniform_real_distribution<double> dmu(0.0, 2.0), dp(1.01, 3.5);
    int accepted = 0;
    while (accepted < 1000) {
        ModelParams mp;
        mp.n = dn(rng);
        mp.mu = dmu(rng);
        mp.p = dp(rng);
        if (mp.mu == 1.0 || !admissible(mp)) continue;
        ++accepted;
        CHECK(std::abs(kato_lifespan_exponent(mp) - lifespan_exponent(mp)) <= 1e-10);
    }
}

TEST_CASE("verify_kato_link runs the assembled problem") {
    const ModelParams mp{2, 0.5, 2.0, 1.0, 1.0};
    const KatoParams kp = kato_parameters(mp);
    const BlowupReport r = verify_kato_link(
        mp, [&](double t) { return 0.01 * std::pow(t + mp.R, kp.a); }, 1e6, 1e5);
    CHECK(r.blew_up);
    CHECK(r.T_est > 0.0);
    CHECK_THROWS_AS(verify_kato_link({2, 0.5, 2.9, 1.0, 1.0},
                                     [](double) { return 1.0; }, 1e6, 100.0),
                    std::domain_error);
    CHECK_THROWS_AS(verify_kato_link(mp, [](double) { return 0.0; }, 1e6, 100.0),
                    std::domain_error);
}

TEST_CASE("problem validation") {
    KatoProblem kp;
    kp.p = 1.0;
    CHECK_THROWS_AS(kp.validate(), std::domain_error);
    kp.p = 2.0;
    kp.m = -1.0;
    CHECK_THROWS_AS(kp.validate(), std::domain_error);
    kp.m = 1.0;
    kp.delta = 0.0;
    CHECK_THROWS_AS(kp.validate(), std::domain_error);
    kp.delta = 1.0;
    CHECK_NOTHROW(kp.validate());
    CHECK(KatoProblem::from_envelope(3.0, 1.0, 0.0, 1.0, 1.0, 0.5).satisfies_lemma_hypotheses());
}
