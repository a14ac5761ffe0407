#include "sdwave/verify.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sdwave/exponents.hpp"
#include "sdwave/field.hpp"
#include "sdwave/functionals.hpp"
#include "sdwave/ode_oracle.hpp"
#include "sdwave/specfun.hpp"
#include "sdwave/transform.hpp"

namespace sdwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

struct Suite {
    std::vector<CheckResult> results;
    void add(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    }
};

double t0_for_ell(double ell) {
    // anchor via the low-regime map mu = ell/(1+ell)
    if (ell == 0.0) return 0.0;
    const double mu = ell / (1.0 + ell);
    return std::pow(1.0 - mu, mu - 1.0) - 1.0;
}

void exponent_checks(Suite& s, int samples) {
    // root residual over k in (1, 10]
    double worst = 0.0;
    for (int i = 1; i <= 200; ++i) {
        const double k = 1.0 + 9.0 * i / 200.0;
        const double ps = strauss_exponent(k);
        worst = std::max(worst, std::abs(strauss_residual(k, ps)) / std::max(1.0, k));
    }
    s.add("exponents/strauss-residual", worst <= 1e-10, "max " + fmt(worst));

    bool mono = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 400; ++i) {
        const double k = 1.0 + 9.0 * i / 400.0;
        const double ps = strauss_exponent(k);
        if (!(ps < prev)) mono = false;
        prev = ps;
    }
    s.add("exponents/strauss-monotone", mono, mono ? "decreasing on (1,10]" : "violation");

    bool order = true;
    for (int n = 2; n <= 6; ++n)
        for (int j = 1; j < 40; ++j) {
            const double mu = 2.0 * j / 40.0;
            if (mu == 1.0) continue;
            if (!(strauss_exponent(n + mu) > fujita_exponent(n))) order = false;
        }
    s.add("exponents/strauss-above-fujita", order, "n in [2,6], mu in (0,2)");

    // a(p-1) > q-2  <=>  (n+mu-1)p^2 - (n+mu+1)p - 2 < 0
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> dn(2, 6);
    std::uniform_real_distribution<double> dmu(0.0, 2.0), dp(1.0 + 1e-6, 6.0);
    int disagreements = 0;
    for (int i = 0; i < samples; ++i) {
        const int n = dn(rng);
        double mu = dmu(rng);
        if (mu == 1.0) mu = 0.999;
        const double p = dp(rng);
        const KatoParams kp = kato_parameters_raw(n, mu, p);
        const bool lhs = kp.a * (p - 1.0) > kp.q - 2.0;
        const bool rhs = (n + mu - 1.0) * p * p - (n + mu + 1.0) * p - 2.0 < 0.0;
        if (lhs != rhs) ++disagreements;
    }
    s.add("exponents/kato-equivalence", disagreements == 0,
          fmt(samples) + " samples, " + fmt(disagreements) + " disagreements");

    // p(p-1)/((p-1)a - q + 2) == lifespan exponent
    std::mt19937 rng2(777);
    double worst_id = 0.0;
    int accepted = 0;
    while (accepted < samples / 10) {
        ModelParams mp;
        mp.n = dn(rng2);
        mp.mu = dmu(rng2);
        mp.p = std::uniform_real_distribution<double>(1.01, 3.5)(rng2);
        if (mp.mu == 1.0 || !admissible(mp)) continue;
        ++accepted;
        worst_id = std::max(worst_id,
                            std::abs(kato_lifespan_exponent(mp) - lifespan_exponent(mp)));
    }
    s.add("exponents/kato-link-identity", worst_id <= 1e-10, "max |diff| " + fmt(worst_id));

    // divergence of the lifespan exponent as p -> p_S
    ModelParams mp{2, 0.5, 2.0, 1.0, 1.0};
    mp.p = strauss_exponent(2.5) - 1e-9;
    const bool diverges = lifespan_exponent(mp) > 1e6;
    s.add("exponents/lifespan-divergence", diverges, "k(p_S - 1e-9) = " + fmt(lifespan_exponent(mp)));
}

void specfun_checks(Suite& s, const VerifyOptions& opt) {
    // K_{1/2} closed form
    double worst = 0.0;
    for (int i = 0; i <= 160; ++i) {
        const double t = std::pow(10.0, -2.0 + 4.0 * i / 160.0);
        const double exact = std::sqrt(kPi / (2.0 * t)) * std::exp(-t);
        worst = std::max(worst, std::abs(bessel_k(0.5, t) - exact) / exact);
    }
    s.add("specfun/bessel-k-half", worst <= 1e-8, "max rel " + fmt(worst));

    // phi for n = 3 vs 4 pi sinh(r)/r
    worst = 0.0;
    for (int i = 0; i <= 120; ++i) {
        const double r = 0.01 + (30.0 - 0.01) * i / 120.0;
        const double exact = 4.0 * kPi * std::sinh(r) / r;
        worst = std::max(worst, std::abs(phi(r, 3) - exact) / exact);
    }
    s.add("specfun/phi-n3-closed-form", worst <= 1e-9, "max rel " + fmt(worst));

    // radial Laplacian identity  phi'' + (n-1) phi'/r = phi
    worst = 0.0;
    const double h = 1e-4;
    for (int n = 2; n <= 3; ++n)
        for (int i = 0; i <= 40; ++i) {
            const double r = 0.1 + (20.0 - 0.1) * i / 40.0;
            const double pm = phi(r - h, n), p0 = phi(r, n), pp = phi(r + h, n);
            const double lap = (pp - 2.0 * p0 + pm) / (h * h) + (n - 1) / r * (pp - pm) / (2.0 * h);
            worst = std::max(worst, std::abs(lap - p0) / p0);
        }
    s.add("specfun/phi-laplacian-identity", worst <= 1e-4, "max rel " + fmt(worst));

    // recurrence K_{a+1} - K_{a-1} = (2a/t) K_a (scaled versions: e^t cancels)
    worst = 0.0;
    for (double alpha : {0.25, 0.5})
        for (int i = 0; i <= 40; ++i) {
            const double t = 0.5 + (20.0 - 0.5) * i / 40.0;
            const double lhs = bessel_k_scaled(alpha + 1.0, t) - bessel_k_scaled(alpha - 1.0, t);
            const double rhs = 2.0 * alpha / t * bessel_k_scaled(alpha, t);
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
    s.add("specfun/bessel-recurrence", worst <= 1e-8, "max rel " + fmt(worst));

    // K asymptotics: t |e^t K sqrt(2t/pi) - 1| bounded by |4 a^2 - 1|/8 + slack
    worst = 0.0;
    for (double alpha : {0.25, 0.5})
        for (int i = 0; i <= 30; ++i) {
            const double t = 10.0 + 90.0 * i / 30.0;
            const double ratio = bessel_k_scaled(alpha, t) * std::sqrt(2.0 * t / kPi);
            worst = std::max(worst, t * std::abs(ratio - 1.0));
        }
    s.add("specfun/bessel-asymptotic", worst <= 0.5, "max t|ratio-1| " + fmt(worst));

    // lambda(t0) = 1
    worst = 0.0;
    for (double ell : {0.25, 0.5, 1.0, 3.0}) {
        LambdaWeight w(ell, t0_for_ell(ell));
        if (opt.cell_perturbation != 1.0) w.perturb_normalization(opt.cell_perturbation);
        worst = std::max(worst, std::abs(w.value(w.t0()) - 1.0));
    }
    s.add("specfun/lambda-normalization", worst <= 1e-10, "max |lambda(t0)-1| " + fmt(worst));

    // monotonicity of lambda and -lambda' (log scale; underflow-free)
    bool mono = true;
    for (double ell : {0.25, 1.0}) {
        LambdaWeight w(ell, t0_for_ell(ell));
        double prev_l = std::numeric_limits<double>::infinity();
        double prev_dl = std::numeric_limits<double>::infinity();
        const double t_hi = std::min(100.0, std::pow(600.0 * (ell + 1.0), 1.0 / (ell + 1.0)));
        for (int i = 0; i <= 120; ++i) {
            const double t = w.t0() + (t_hi - w.t0()) * i / 120.0;
            const double lv = w.log_value(t);
            const double dv = std::log(w.ratio(std::max(t, w.t0() + 1e-9))) + lv +
                              w.ell() * std::log(std::max(t, 1e-12));
            if (i > 0 && (!(lv < prev_l) || !(dv < prev_dl))) mono = false;
            prev_l = lv;
            prev_dl = dv;
        }
    }
    s.add("specfun/lambda-monotone", mono, mono ? "lambda, -lambda' decreasing" : "violation");

    // lambda'' = t^{2l} lambda residual and its O(h^2) decay
    {
        LambdaWeight w1(1.0, t0_for_ell(1.0));
        const double r1 = w1.ode_residual(2.0, 1e-3);
        LambdaWeight w0(0.0, 0.0);
        const double r0 = w0.ode_residual(2.0, 1e-3);
        const double ra = w1.ode_residual(2.0, 0.04);
        const double rb = w1.ode_residual(2.0, 0.02);
        const bool pass = r1 <= 1e-4 && r0 <= 1e-6 && (ra / rb > 3.0 && ra / rb < 5.0);
        s.add("specfun/lambda-ode-residual", pass,
              "res(l=1,h=1e-3) " + fmt(r1) + ", res(l=0) " + fmt(r0) + ", order ratio " +
                  fmt(ra / rb));
    }

    // empirical extremes of -lambda'/(lambda t^l); paper asserts some C > 1.
    // Measured sup for ell = 3 is ~13.5 (> the 10 first guessed), so the
    // suite asserts the corrected band [0.1, 20] and reports the extremes.
    {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double ell : {0.25, 0.5, 1.0, 3.0}) {
            LambdaWeight w(ell, t0_for_ell(ell));
            for (int i = 0; i <= 200; ++i) {
                const double t = w.t0() + (50.0 - w.t0()) * i / 200.0;
                const double r = w.ratio(std::max(t, w.t0() + 1e-12));
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        }
        s.add("specfun/lambda-ratio-band", lo >= 0.1 && hi <= 20.0,
              "empirical range [" + fmt(lo) + ", " + fmt(hi) + "]");
    }
}

void transform_checks(Suite& s) {
    // Lambda strictly increasing and convex for ell > 0
    bool ok = true;
    for (double ell : {0.5, 1.0, 3.0}) {
        double prev = time_forward(0.0, ell), prev_d = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double t = 10.0 * i / 100.0;
            const double v = time_forward(t, ell);
            const double d = v - prev;
            if (!(v > prev) || (i > 1 && !(d > prev_d))) ok = false;
            prev = v;
            prev_d = d;
        }
    }
    s.add("transform/lambda-increasing-convex", ok, "ell in {0.5, 1, 3}");

    // Lambda(t0) - 1 = 0 in both regimes
    double worst = 0.0;
    for (int j = 1; j < 40; ++j) {
        const double mu = 2.0 * j / 40.0;
        if (mu == 1.0) continue;
        const RegimeConstants rc = regime_constants(mu);
        worst = std::max(worst, std::abs(time_forward(rc.t0, rc.ell) - 1.0));
    }
    s.add("transform/t0-maps-to-origin", worst <= 1e-12, "max |Lambda(t0)-1| " + fmt(worst));

    // source/speed exponent identity
    ModelParams low{2, 0.5, 2.0, 1.0, 1.0}, high{2, 1.5, 2.0, 1.0, 1.0};
    DataProfile prof;
    const TransformedProblem tl = build_transformed(low, prof);
    const TransformedProblem th = build_transformed(high, prof);
    const bool ident = tl.source_exponent == tl.speed_exponent &&
                       th.source_exponent == th.speed_exponent - (high.p - 1.0);
    s.add("transform/regime-exponent-identity", ident,
          "low diff 0, high diff -(p-1)");

    // round trips
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> ds(0.01, 100.0), dl(0.0, 4.0);
    worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double ell = dl(rng), sv = ds(rng);
        const double tv = time_inverse(sv, ell);
        if (tv >= 0.0)
            worst = std::max(worst, std::abs(time_forward(tv, ell) - sv) / sv);
    }
    s.add("transform/roundtrip", worst <= 1e-12, "max rel " + fmt(worst));
}

void functionals_checks(Suite& s) {
    // exact scaling linearity of F and F1
    RadialGrid g{0.01, 256};
    RadialField f{g, std::vector<double>(256)};
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (auto& v : f.values) v = d(rng);
    RadialField f3 = f;
    for (auto& v : f3.values) v *= 3.0;
    const double F1a = functional_F(f, 2), F1b = functional_F(f3, 2);
    LambdaWeight w(1.0, t0_for_ell(1.0));
    const double G1a = functional_F1(f, 1.0, w, 2), G1b = functional_F1(f3, 1.0, w, 2);
    const double e1 = std::abs(F1b - 3.0 * F1a) / std::max(std::abs(F1b), 1e-300);
    const double e2 = std::abs(G1b - 3.0 * G1a) / std::max(std::abs(G1b), 1e-300);
    s.add("functionals/linearity", e1 <= 1e-12 && e2 <= 1e-12,
          "rel err F " + fmt(e1) + ", F1 " + fmt(e2));

    // quick exact-family oracle: f'' = f^3 from the closed form blows at sqrt(2)
    KatoProblem kp;
    kp.p = 3.0; kp.q = 0.0; kp.m = 1.0; kp.R = 1.0; kp.delta = 1.0;
    kp.f_init = std::sqrt(2.0);
    kp.fprime_init = std::sqrt(2.0);
    const BlowupReport rep = integrate_blowup(kp, 1e6, 10.0);
    const double err = std::abs(rep.T_est - 1.0);
    s.add("ode/exact-family", rep.blew_up && err <= 0.01, "T " + fmt(rep.T_est));
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt) {
    Suite s;
    exponent_checks(s, opt.quick ? 1000 : 10000);
    specfun_checks(s, opt);
    transform_checks(s);
    functionals_checks(s);
    return s.results;
}

}  // namespace sdwave
