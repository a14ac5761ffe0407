#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sdwave/exponents.hpp"

using namespace sdwave;

namespace {

// Independent root oracle: bisection on the quadratic in long double.
double strauss_oracle(double k) {
    long double lo = 1.0L, hi = 64.0L;
    auto f = [&](long double p) { return (k - 1.0L) * p * p - (k + 1.0L) * p - 2.0L; };
    for (int i = 0; i < 200; ++i) {
        const long double m = 0.5L * (lo + hi);
        (f(m) < 0.0L ? lo : hi) = m;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace

TEST_CASE("strauss exponent closed-form anchors") {
    CHECK(strauss_exponent(3.0) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-15));
    CHECK(strauss_exponent(2.0) ==
          doctest::Approx((3.0 + std::sqrt(17.0)) / 2.0).epsilon(1e-15));
    // p_S(2.5) = (3.5 + sqrt(24.25)) / 3
    CHECK(strauss_exponent(2.5) ==
          doctest::Approx((3.5 + std::sqrt(24.25)) / 3.0).epsilon(1e-15));
    CHECK(std::abs(strauss_exponent(2.5) - strauss_oracle(2.5)) <= 1e-12);
    CHECK_THROWS_AS(strauss_exponent(1.0), std::domain_error);
    CHECK_THROWS_AS(strauss_exponent(0.5), std::domain_error);
}

TEST_CASE("strauss root residual and monotonicity over (1, 10]") {
    double prev = 1e300;
    for (int i = 1; i <= 300; ++i) {
        const double k = 1.0 + 9.0 * i / 300.0;
        const double ps = strauss_exponent(k);
        CHECK(std::abs(strauss_residual(k, ps)) <= 1e-10 * std::max(1.0, k));
        CHECK(ps < prev);
        CHECK(ps > 1.0);
        prev = ps;
    }
}

TEST_CASE("fujita exponent") {
    CHECK(fujita_exponent(2) == 2.0);
    CHECK(fujita_exponent(1) == 3.0);
    CHECK(fujita_exponent(4) == 1.5);
    CHECK_THROWS_AS(fujita_exponent(0), std::domain_error);
}

TEST_CASE("strauss dominates fujita in the damping window") {
    for (int n = 2; n <= 6; ++n)
        for (int j = 1; j < 20; ++j) {
            const double mu = 2.0 * j / 20.0;
            CHECK(strauss_exponent(n + mu) > fujita_exponent(n));
        }
}

TEST_CASE("admissibility predicate") {
    CHECK(admissible(2, 0.5, 2.0));
    CHECK_FALSE(admissible(2, 1.0, 2.0));   // excluded borderline
    CHECK_FALSE(admissible(3, 0.5, 3.0));   // above p_S(3.5)
    CHECK_FALSE(admissible(1, 0.5, 2.0));
    CHECK_FALSE(admissible(2, 2.5, 2.0));
    CHECK_FALSE(admissible(2, 0.5, 1.0));
    // boundary p = p_S rejected exactly
    CHECK_FALSE(admissible(2, 0.5, strauss_exponent(2.5)));
    CHECK(admissible(2, 0.0, 2.0));
    CHECK(admissible(2, 2.0, 2.0));
}

TEST_CASE("lifespan exponent values") {
    CHECK(lifespan_exponent({3, 0.5, 2.0, 1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lifespan_exponent({2, 0.5, 2.0, 1.0, 1.0}) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    ModelParams bad{2, 0.5, strauss_exponent(2.5), 1.0, 1.0};
    CHECK_THROWS_AS(lifespan_exponent(bad), std::domain_error);
    ModelParams mu1{2, 1.0, 2.0, 1.0, 1.0};
    CHECK_THROWS_AS(lifespan_exponent(mu1), std::domain_error);
}

TEST_CASE("lifespan exponent grows without bound approaching p_S") {
    const double ps = strauss_exponent(2.5);
    double prev = 0.0;
    for (double gap : {1e-2, 1e-4, 1e-6, 1e-8}) {
        ModelParams mp{2, 0.5, ps - gap, 1.0, 1.0};
        const double k = lifespan_exponent(mp);
        CHECK(k > prev);
        prev = k;
    }
    CHECK(prev > 1e6);
}

TEST_CASE("regime constants") {
    const RegimeConstants r0 = regime_constants(0.0);
    CHECK(r0.ell == 0.0);
    CHECK(r0.t0 == 0.0);
    CHECK(r0.regime == Regime::low);

    const RegimeConstants rl = regime_constants(0.5);
    CHECK(rl.ell == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rl.t0 == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
    CHECK(rl.regime == Regime::low);

    const RegimeConstants rh = regime_constants(1.5);
    CHECK(rh.ell == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rh.t0 == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
    CHECK(rh.regime == Regime::high);

    CHECK_THROWS_AS(regime_constants(1.0), std::domain_error);
    CHECK_THROWS_AS(regime_constants(-0.1), std::domain_error);
    CHECK_THROWS_AS(regime_constants(2.1), std::domain_error);

    // t0 >= 0 across the admissible mu range
    for (int j = 0; j <= 40; ++j) {
        const double mu = 2.0 * j / 40.0;
        if (mu == 1.0) continue;
        const RegimeConstants rc = regime_constants(mu);
        CHECK(rc.t0 >= 0.0);
        CHECK(rc.ell >= 0.0);
    }
}

TEST_CASE("kato parameters by direct substitution") {
    const KatoParams a = kato_parameters({2, 0.5, 2.0, 1.0, 1.0});
    CHECK(a.a == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(a.q == doctest::Approx(2.0).epsilon(1e-15));

    const KatoParams b = kato_parameters({2, 1.5, 2.0, 1.0, 1.0});
    CHECK(b.a == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(b.q == doctest::Approx(3.0).epsilon(1e-15));

    ModelParams bad{2, 0.5, 2.9, 1.0, 1.0};
    CHECK_THROWS_AS(kato_parameters(bad), std::domain_error);
}

TEST_CASE("kato hypotheses forced for admissible samples") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dn(2, 6);
    std::uniform_real_distribution<double> dmu(0.0, 2.0), dp(1.01, 3.5);
    int accepted = 0;
    while (accepted < 500) {
        ModelParams mp;
        mp.n = dn(rng);
        mp.mu = dmu(rng);
        mp.p = dp(rng);
        if (mp.mu == 1.0 || !admissible(mp)) continue;
        ++accepted;
        const KatoParams kp = kato_parameters(mp);
        CHECK(kp.a > 1.0);
        CHECK((mp.p - 1.0) * kp.a - kp.q + 2.0 > 0.0);
    }
}

TEST_CASE("hypothesis equivalence with the strauss quadratic") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> dn(2, 6);
    std::uniform_real_distribution<double> dmu(0.0, 2.0), dp(1.0 + 1e-6, 6.0);
    for (int i = 0; i < 2000; ++i) {
        const int n = dn(rng);
        double mu = dmu(rng);
        if (mu == 1.0) mu = 0.999;
        const double p = dp(rng);
        const KatoParams kp = kato_parameters_raw(n, mu, p);
        const bool lhs = kp.a * (p - 1.0) > kp.q - 2.0;
        const bool rhs = (n + mu - 1.0) * p * p - (n + mu + 1.0) * p - 2.0 < 0.0;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("model parameter validation") {
    ModelParams good{2, 0.5, 2.0, 1.0, 1.0};
    CHECK_NOTHROW(good.validate());
    ModelParams bn = good; bn.n = 1;
    CHECK_THROWS_AS(bn.validate(), std::domain_error);
    ModelParams bm = good; bm.mu = 1.0;
    CHECK_THROWS_AS(bm.validate(), std::domain_error);
    ModelParams bp = good; bp.p = 1.0;
    CHECK_THROWS_AS(bp.validate(), std::domain_error);
    ModelParams be = good; be.epsilon = 0.0;
    CHECK_THROWS_AS(be.validate(), std::domain_error);
    ModelParams br = good; br.R = -1.0;
    CHECK_THROWS_AS(br.validate(), std::domain_error);
}
