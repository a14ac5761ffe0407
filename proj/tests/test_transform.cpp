#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sdwave/radial_solver.hpp"
#include "sdwave/transform.hpp"

using namespace sdwave;

TEST_CASE("time map anchors") {
    CHECK(time_forward(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(time_forward(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(time_forward(std::sqrt(2.0) - 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(time_inverse(2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(time_inverse(1.0, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(time_inverse(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(time_forward(-0.5, 1.0), std::domain_error);
}

TEST_CASE("time maps are inverse to each other") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ds(0.01, 100.0), dl(0.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double ell = dl(rng), s = ds(rng);
        const double t = time_inverse(s, ell);
        if (t < 0.0) continue;  // s below Lambda(0)
        CHECK(time_forward(t, ell) == doctest::Approx(s).epsilon(1e-12));
    }
    for (int i = 0; i < 100; ++i) {
        const double ell = dl(rng), t = ds(rng) * 0.3;
        CHECK(time_inverse(time_forward(t, ell), ell) == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("transformed lifespan maps back through Lambda") {
    CHECK(lifespan_pullback(3.0, 1.0) == doctest::Approx(7.0).epsilon(1e-14));
    CHECK(lifespan_pullback(5.0, 0.0) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("transformed problem data scalings") {
    DataProfile prof;

    // mu = 0: identity transform
    const TransformedProblem t0 = build_transformed({2, 0.0, 2.0, 0.3, 1.0}, prof);
    CHECK(t0.ell == 0.0);
    CHECK(t0.t0 == 0.0);
    CHECK(t0.speed_exponent == 0.0);
    CHECK(t0.source_exponent == 0.0);
    CHECK(t0.pos_coeff0 == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(t0.vel_coeff0 == 0.0);
    CHECK(t0.vel_coeff1 == doctest::Approx(0.3).epsilon(1e-15));

    // mu = 0.5: velocity scaled by (1-mu)^{-mu} = sqrt(2)
    const TransformedProblem tl = build_transformed({2, 0.5, 2.0, 0.3, 1.0}, prof);
    CHECK(tl.regime == Regime::low);
    CHECK(tl.vel_coeff1 == doctest::Approx(0.3 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(tl.pos_coeff0 == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(tl.source_exponent == doctest::Approx(tl.speed_exponent).epsilon(1e-15));

    // mu = 1.5: position scaled by sqrt(2), velocity = eps u0 + 2 eps u1
    const TransformedProblem th = build_transformed({2, 1.5, 2.0, 0.3, 1.0}, prof);
    CHECK(th.regime == Regime::high);
    CHECK(th.pos_coeff0 == doctest::Approx(0.3 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(th.vel_coeff0 == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(th.vel_coeff1 == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(th.source_exponent ==
          doctest::Approx(th.speed_exponent - (2.0 - 1.0)).epsilon(1e-15));

    ModelParams bad{2, 0.5, 2.9, 1.0, 1.0};
    CHECK_THROWS_AS(build_transformed(bad, prof), std::domain_error);
}

TEST_CASE("field-based builder scales the samples") {
    RadialGrid g{0.01, 128};
    RadialField u0{g, std::vector<double>(128, 0.0)}, u1 = u0;
    DataProfile prof;
    for (int i = 0; i < g.count; ++i) {
        u0.values[i] = prof.position(g.r(i));
        u1.values[i] = prof.velocity(g.r(i));
    }
    const ModelParams mp{2, 1.5, 2.0, 0.3, 1.0};
    const TransformedProblem tp = build_transformed(mp, u0, u1);
    REQUIRE(tp.w0.values.size() == u0.values.size());
    for (int i = 0; i < g.count; ++i) {
        CHECK(tp.w0.values[i] ==
              doctest::Approx(0.3 * std::sqrt(2.0) * u0.values[i]).epsilon(1e-14));
        CHECK(tp.w1.values[i] ==
              doctest::Approx(0.3 * u0.values[i] + 0.6 * u1.values[i]).epsilon(1e-14));
    }
}

TEST_CASE("pullback against a synthetic closed-form trajectory") {
    // w(tau, r) = (1 + tau) g(r) in the high regime gives u(s, r) = g(r)
    RadialGrid g{0.05, 128};
    Trajectory w;
    w.grid = g;
    w.n = 2;
    w.p = 2.0;
    w.ell = 1.0;
    w.t0 = std::sqrt(2.0) - 1.0;
    w.transformed_picture = true;
    DataProfile prof;
    for (int k = 0; k <= 80; ++k) {
        Frame fr;
        fr.t = w.t0 + 0.05 * k;
        fr.values.resize(g.count);
        for (int i = 0; i < g.count; ++i)
            fr.values[i] = (1.0 + fr.t) * prof.position(g.r(i));
        w.frames.push_back(std::move(fr));
    }
    const ModelParams mp{2, 1.5, 2.0, 1.0, 1.0};
    std::vector<double> times{0.0, 0.5, 3.0};
    const Trajectory u = pullback_solution(w, mp, times);
    REQUIRE(u.frames.size() == 3);
    for (const Frame& fr : u.frames)
        for (int i = 0; i < g.count; ++i)
            CHECK(fr.values[i] == doctest::Approx(prof.position(g.r(i))).epsilon(1e-10));

    std::vector<double> beyond{1e6};
    CHECK_THROWS_AS(pullback_solution(w, mp, beyond), std::out_of_range);
}

TEST_CASE("identity regime cross-residual vanishes") {
    ModelParams mp{2, 0.0, 2.0, 0.5, 1.0};
    DataProfile prof;
    SolverConfig cfg;
    cfg.count = 256;
    cfg.cfl = 0.45;
    const CrossCheckResult r = cross_residual(mp, prof, cfg, 1.0);
    CHECK(r.discrepancy <= 1e-12);
    CHECK(r.samples > 0);
}

TEST_CASE("cross-residual shrinks at second order") {
    DataProfile prof;
    for (double mu : {0.5, 1.5}) {
        ModelParams mp{2, mu, 2.0, 0.3, 1.0};
        SolverConfig coarse;
        coarse.count = 512;
        coarse.cfl = 0.45;
        SolverConfig fine = coarse;
        fine.count = 1024;
        const double dc = cross_residual(mp, prof, coarse, 1.0).discrepancy;
        const double df = cross_residual(mp, prof, fine, 1.0).discrepancy;
        const double ratio = dc / df;
        CHECK(ratio > 3.0);
        CHECK(ratio < 5.0);
    }
}
