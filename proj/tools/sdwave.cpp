// Command-line front end: exponent tables, ODE blow-up runs, radial solves,
// lifespan sweeps, transform cross-checks and the invariant suite.
//
// Exit codes: 0 success, 1 check failure, 2 configuration error,
// 3 numerical failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdwave/exponents.hpp"
#include "sdwave/functionals.hpp"
#include "sdwave/ode_oracle.hpp"
#include "sdwave/radial_solver.hpp"
#include "sdwave/report.hpp"
#include "sdwave/specfun.hpp"
#include "sdwave/transform.hpp"
#include "sdwave/verify.hpp"

namespace {

using namespace sdwave;

struct CommonOpts {
    ModelParams params;
    DataProfile profile;
    SolverConfig cfg;
    std::string out_dir;
    bool exploratory = false;
    int jobs = 1;
};

std::string default_out_dir() {
    const char* env = std::getenv("SDWAVE_OUTPUT_DIR");
    return env ? env : ".";
}

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--n", o.params.n, "spatial dimension (>= 2)");
    cmd->add_option("--mu", o.params.mu, "damping coefficient in [0,2], mu != 1");
    cmd->add_option("--p", o.params.p, "nonlinearity exponent (> 1)");
    cmd->add_option("--epsilon", o.params.epsilon, "data amplitude (> 0)");
    cmd->add_option("--R", o.params.R, "data support radius");
    cmd->add_option("--amp0", o.profile.amplitude0, "bump amplitude of u0");
    cmd->add_option("--amp1", o.profile.amplitude1, "bump amplitude of u1");
    cmd->add_option("--smoothness", o.profile.smoothness, "bump smoothness k (>= 2)");
    cmd->add_option("--count", o.cfg.count, "grid nodes");
    cmd->add_option("--cfl", o.cfg.cfl, "CFL number in (0, 0.9]");
    cmd->add_option("--t-max", o.cfg.t_max, "time horizon");
    cmd->add_option("--margin", o.cfg.margin, "grid margin beyond the light cone");
    cmd->add_option("--threshold", o.cfg.blowup_threshold, "blow-up threshold (>= 1e6)");
    cmd->add_option("--output-every", o.cfg.output_every, "frame cadence in steps");
    cmd->add_option("--out-dir", o.out_dir, "output directory (env SDWAVE_OUTPUT_DIR)");
    cmd->add_flag("--exploratory", o.exploratory, "allow inadmissible parameter tuples");
    cmd->add_option("--jobs", o.jobs, "parallel sweep workers");
}

void gate_admissibility(const CommonOpts& o) {
    o.params.validate();
    if (!admissible(o.params) && !o.exploratory)
        throw CLI::ValidationError(
            "params",
            "inadmissible (n, mu, p) for the blow-up range 1 < p < p_S(n+mu); "
            "pass --exploratory to run anyway");
}

void emit(const std::string& dir, const std::string& name, const std::string& body) {
    std::filesystem::create_directories(dir);
    write_text_file(dir + "/" + name, body);
    std::cerr << "wrote " << dir << "/" << name << "\n";
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// ---------------------------------------------------------------------------

int cmd_exponents(const CommonOpts& o, bool have_p) {
    const double k = o.params.n + o.params.mu;
    if (o.params.mu == 1.0) {
        std::cerr << "mu = 1 is the excluded borderline case: the Liouville "
                     "transform degenerates and the theorem does not cover it\n";
        return 2;
    }
    if (o.params.mu < 0.0 || o.params.mu > 2.0) {
        std::cerr << "mu outside [0, 2]\n";
        return 2;
    }
    const RegimeConstants rc = regime_constants(o.params.mu);
    std::cout << "n                  = " << o.params.n << "\n"
              << "mu                 = " << o.params.mu << "\n"
              << "p_S(n+mu)          = " << strauss_exponent(k) << "\n"
              << "p_F(n)             = " << fujita_exponent(o.params.n) << "\n"
              << "regime             = " << (rc.regime == Regime::low ? "low (mu<1)" : "high (mu>1)") << "\n"
              << "ell                = " << rc.ell << "\n"
              << "t0                 = " << rc.t0 << "\n";
    if (have_p) {
        std::cout << "p                  = " << o.params.p << "\n"
                  << "admissible         = " << (admissible(o.params) ? "yes" : "no") << "\n";
        if (admissible(o.params)) {
            const KatoParams kp = kato_parameters(o.params);
            std::cout << "kato a             = " << kp.a << "\n"
                      << "kato q             = " << kp.q << "\n"
                      << "lifespan exponent  = " << lifespan_exponent(o.params) << "\n";
        }
    }
    return 0;
}

int cmd_ode_blowup(const CommonOpts& o, KatoProblem kp, double threshold, double horizon,
                   std::vector<double> sweep, bool have_f0, bool have_fp0) {
    OrderedJson rep = report_header("ode-blowup");
    if (!have_f0) kp.f_init = kp.delta * std::pow(kp.t_start + kp.R, kp.a);
    if (!have_fp0) kp.fprime_init = kp.delta * kp.a * std::pow(kp.t_start + kp.R, kp.a - 1.0);
    rep["problem"] = {{"p", kp.p},         {"a", kp.a},           {"q", kp.q},
                      {"m", kp.m},         {"R", kp.R},           {"delta", kp.delta},
                      {"t_start", kp.t_start}, {"f_init", kp.f_init}, {"fprime_init", kp.fprime_init}};
    if (sweep.empty()) {
        const BlowupReport r = integrate_blowup(kp, threshold, horizon);
        rep["result"] = to_json(r);
    } else {
        const PowerLawFit f = sweep_delta(kp, sweep, threshold, horizon);
        rep["sweep"] = to_json(f);
        rep["theoretical_slope"] = kato_sweep_slope(kp);
        emit(o.out_dir, "ode_sweep.csv", delta_sweep_csv(f));
    }
    emit(o.out_dir, "ode_report.json", rep.dump(2) + "\n");
    return 0;
}

int cmd_solve(const CommonOpts& o, const std::string& picture, const std::string& checks,
              bool emit_frames, const std::string& frames_format) {
    gate_admissibility(o);
    Stopwatch sw;
    OrderedJson rep = report_header("solve");
    rep["params"] = to_json(o.params);
    rep["profile"] = to_json(o.profile);
    rep["solver"] = to_json(o.cfg);
    rep["picture"] = picture;
    rep["exploratory"] = o.exploratory;

    SolveOutcome out;
    if (picture == "damped") {
        out = solve_damped(o.params, o.profile, o.cfg);
    } else if (picture == "transformed") {
        out = solve_transformed(build_transformed(o.params, o.profile), o.cfg);
    } else {
        throw CLI::ValidationError("--picture", "must be damped or transformed");
    }
    rep["result"] = to_json(out.report);

    if (!checks.empty()) {
        if (picture != "transformed")
            throw CLI::ValidationError("--checks", "lemma checks need --picture transformed");
        const RegimeConstants rc = regime_constants(o.params.mu);
        const LambdaWeight w = LambdaWeight::from_regime(rc);
        OrderedJson cj;
        if (checks.find("f1") != std::string::npos) {
            const FunctionalTrace tr = build_trace(out.trajectory, w);
            cj["f1_window_min"] = check_F1_lower(tr, o.params.epsilon, default_t2(rc.t0));
        }
        if (checks.find("lemma22") != std::string::npos) {
            OrderedJson arr = OrderedJson::array();
            const double t1 = rc.t0 + 1.0;
            for (int i = 0; i <= 40; ++i) {
                const double t = t1 + (30.0 - t1) * i / 40.0;
                arr.push_back({t, lemma22_ratio(t, o.params, w)});
            }
            cj["lemma22_ratio_sweep"] = arr;
        }
        if (checks.find("chain") != std::string::npos) {
            const ChainReport cr = check_chain(out.trajectory, o.params, w, default_t2(rc.t0));
            cj["chain"] = {{"min_c1", cr.min_c1},
                           {"min_c2", cr.min_c2},
                           {"frames_used", cr.frames_used},
                           {"frames_skipped", cr.frames_skipped}};
        }
        if (checks.find("hoelder") != std::string::npos) {
            const HoelderReport hr = check_hoelder(out.trajectory, o.params, w);
            cj["hoelder"] = {{"max_ratio_F", hr.max_ratio_F},
                             {"max_ratio_F1", hr.max_ratio_F1},
                             {"frames", hr.frames}};
        }
        rep["checks"] = cj;
    }

    if (emit_frames) {
        if (frames_format == "csv")
            emit(o.out_dir, "trajectory.csv", trajectory_csv(out.trajectory, o.params));
        else
            emit(o.out_dir, "trajectory.bin", trajectory_binary(out.trajectory, o.params));
    }
    emit(o.out_dir, "solve_report.json", rep.dump(2) + "\n");
    std::cerr << "solve finished in " << sw.seconds() << " s\n";
    return 0;
}

int cmd_sweep(const CommonOpts& o, std::vector<double> epsilons) {
    gate_admissibility(o);
    Stopwatch sw;
    const EpsilonSweepResult res = epsilon_sweep(o.params, o.profile, o.cfg, epsilons, o.jobs);
    OrderedJson rep = report_header("sweep");
    rep["params"] = to_json(o.params);
    rep["profile"] = to_json(o.profile);
    rep["solver"] = to_json(o.cfg);
    rep["sweep"] = to_json(res);
    emit(o.out_dir, "sweep_report.json", rep.dump(2) + "\n");
    emit(o.out_dir, "sweep.csv", sweep_csv(res));
    emit(o.out_dir, "sweep_plot.py", sweep_plot_script("sweep.csv", res.theoretical_slope));
    std::cerr << "sweep finished in " << sw.seconds() << " s\n";
    return res.bound_consistent ? 0 : 1;
}

int cmd_transform_check(const CommonOpts& o, double window) {
    gate_admissibility(o);
    SolverConfig coarse = o.cfg;
    SolverConfig fine = o.cfg;
    fine.count = o.cfg.count * 2;
    const CrossCheckResult rc = cross_residual(o.params, o.profile, coarse, window);
    const CrossCheckResult rf = cross_residual(o.params, o.profile, fine, window);
    OrderedJson rep = report_header("transform-check");
    rep["params"] = to_json(o.params);
    rep["window"] = rc.window;
    rep["discrepancy_coarse"] = rc.discrepancy;
    rep["discrepancy_fine"] = rf.discrepancy;
    rep["refinement_ratio"] = rc.discrepancy / rf.discrepancy;
    emit(o.out_dir, "transform_check.json", rep.dump(2) + "\n");
    return 0;
}

int cmd_verify(const CommonOpts& o, double perturb_cell) {
    VerifyOptions vo;
    vo.cell_perturbation = perturb_cell;
    const std::vector<CheckResult> results = run_verify_suite(vo);
    OrderedJson rep = report_header("verify");
    OrderedJson arr = OrderedJson::array();
    int failures = 0;
    for (const CheckResult& c : results) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  (" << c.detail << ")\n";
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        if (!c.pass) ++failures;
    }
    rep["checks"] = arr;
    rep["failures"] = failures;
    emit(o.out_dir, "verify_report.json", rep.dump(2) + "\n");
    if (failures > 0) {
        std::cout << failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all " << results.size() << " checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for blow-up of the scale-invariant damped "
                 "semilinear wave equation"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.require_subcommand(1);

    CommonOpts o;
    o.out_dir = default_out_dir();

    auto* cx = app.add_subcommand("exponents", "critical exponents and regime constants");
    bool have_p = false;
    add_model_flags(cx, o);
    cx->callback([&] { have_p = cx->count("--p") > 0; });

    auto* co = app.add_subcommand("ode-blowup", "Kato comparison ODE blow-up runs");
    KatoProblem kp;
    double threshold = 1e6, horizon = 100.0;
    std::vector<double> deltas;
    co->add_option("--ode-p", kp.p, "ODE nonlinearity power");
    co->add_option("--a", kp.a, "envelope growth exponent");
    co->add_option("--q", kp.q, "weight exponent");
    co->add_option("--m", kp.m, "comparison constant");
    co->add_option("--ode-R", kp.R, "radius offset");
    co->add_option("--delta", kp.delta, "envelope size");
    co->add_option("--t-start", kp.t_start, "start time");
    auto* f0opt = co->add_option("--f0", kp.f_init, "initial value (default: envelope)");
    auto* fp0opt = co->add_option("--fprime0", kp.fprime_init, "initial slope (default: envelope)");
    co->add_option("--threshold", threshold, "blow-up threshold");
    co->add_option("--horizon", horizon, "integration horizon");
    co->add_option("--sweep", deltas, "delta sweep values (ascending)")->delimiter(',');
    co->add_option("--out-dir", o.out_dir, "output directory");

    auto* cs = app.add_subcommand("solve", "single radial solve with optional lemma checks");
    std::string picture = "damped", checks, frames_format = "csv";
    bool emit_frames = false;
    add_model_flags(cs, o);
    cs->add_option("--picture", picture, "damped | transformed");
    cs->add_option("--checks", checks, "comma list: f1,lemma22,chain,hoelder");
    cs->add_flag("--emit-frames", emit_frames, "write the trajectory");
    cs->add_option("--frames-format", frames_format, "csv | bin");

    auto* cw = app.add_subcommand("sweep", "epsilon sweep with power-law fit");
    std::vector<double> epsilons{0.4, 0.28, 0.2, 0.14, 0.1, 0.07};
    add_model_flags(cw, o);
    cw->add_option("--epsilons", epsilons, "epsilon values")->delimiter(',');

    auto* ct = app.add_subcommand("transform-check", "damped vs transformed cross-residual");
    double window = 1.0;
    add_model_flags(ct, o);
    ct->add_option("--window", window, "comparison window in original time");

    auto* cv = app.add_subcommand("verify", "invariant suites with measured margins");
    double perturb_cell = 1.0;
    cv->add_option("--out-dir", o.out_dir, "output directory");
    cv->add_option("--perturb-cell", perturb_cell,
                   "fault injection: scale C_ell before the normalization check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(cx)) return cmd_exponents(o, have_p);
        if (app.got_subcommand(co))
            return cmd_ode_blowup(o, kp, threshold, horizon, deltas,
                                  f0opt->count() > 0, fp0opt->count() > 0);
        if (app.got_subcommand(cs)) return cmd_solve(o, picture, checks, emit_frames, frames_format);
        if (app.got_subcommand(cw)) return cmd_sweep(o, epsilons);
        if (app.got_subcommand(ct)) return cmd_transform_check(o, window);
        if (app.got_subcommand(cv)) return cmd_verify(o, perturb_cell);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
