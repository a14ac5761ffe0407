#include <doctest.h>

#include <cmath>

#include "sdwave/quadrature.hpp"

using namespace sdwave;

TEST_CASE("polynomials and trig against closed forms") {
    // int_{-1}^{3} (x^3 - 2x + 1) dx = (81-1)/4 - (9-1) + 4 = 16
    auto q1 = integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 3.0);
    CHECK(q1.value == doctest::Approx(16.0).epsilon(1e-14));
    auto q2 = integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846);
    CHECK(q2.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(q2.converged);
}

TEST_CASE("sharply peaked integrand is resolved adaptively") {
    // Gaussian of width 1e-3 well inside [0, 1]: integral = sqrt(pi) w
    const double w = 1e-3;
    auto q = integrate([&](double x) {
        const double z = (x - 0.3) / w;
        return std::exp(-z * z);
    }, 0.0, 1.0);
    CHECK(q.value == doctest::Approx(std::sqrt(3.14159265358979323846) * w).epsilon(1e-11));
    CHECK(q.converged);
}

TEST_CASE("empty interval and evaluation counting") {
    auto q = integrate([](double) { return 1.0; }, 2.0, 2.0);
    CHECK(q.value == 0.0);
    auto q2 = integrate([](double x) { return x; }, 0.0, 1.0);
    CHECK(q2.evaluations >= 15);
}

TEST_CASE("double-exponential tail like the Bessel integrand") {
    auto f = [](double z) { return std::exp(-5.0 * (std::cosh(z) - 1.0)) * std::cosh(0.5 * z); };
    auto q = integrate(f, 0.0, 6.0);
    // reference by forced composite subdivision of the same rule
    QuadratureOptions tight;
    tight.rel_tol = 1e-15;
    double ref = 0.0;
    for (int i = 0; i < 64; ++i)
        ref += integrate(f, 6.0 * i / 64.0, 6.0 * (i + 1) / 64.0, tight).value;
    CHECK(q.value == doctest::Approx(ref).epsilon(1e-12));
}
