#include "sdwave/report.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sdwave {

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

OrderedJson report_header(const std::string& command) {
    OrderedJson j;
    j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
    j["command"] = command;
    return j;
}

OrderedJson to_json(const ModelParams& p) {
    OrderedJson j;
    j["n"] = p.n;
    j["mu"] = p.mu;
    j["p"] = p.p;
    j["epsilon"] = p.epsilon;
    j["R"] = p.R;
    return j;
}

OrderedJson to_json(const DataProfile& p) {
    OrderedJson j;
    j["kind"] = "bump";
    j["amplitude0"] = p.amplitude0;
    j["amplitude1"] = p.amplitude1;
    j["smoothness"] = p.smoothness;
    j["R"] = p.R;
    return j;
}

OrderedJson to_json(const SolverConfig& c) {
    OrderedJson j;
    j["cfl"] = c.cfl;
    j["blowup_threshold"] = c.blowup_threshold;
    j["t_max"] = c.t_max;
    j["margin"] = c.margin;
    j["count"] = c.count;
    j["output_every"] = c.output_every;
    j["source_enabled"] = c.source_enabled;
    return j;
}

OrderedJson to_json(const BlowupReport& r) {
    OrderedJson j;
    j["blew_up"] = r.blew_up;
    j["T_est"] = r.T_est;
    j["T_uncertainty"] = r.T_uncertainty;
    j["reason"] = to_string(r.reason);
    return j;
}

OrderedJson to_json(const PowerLawFit& f) {
    OrderedJson j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["r_squared"] = f.r_squared;
    OrderedJson samples = OrderedJson::array();
    for (const auto& [x, y] : f.samples) samples.push_back({x, y});
    j["log_log_samples"] = samples;
    return j;
}

OrderedJson to_json(const EpsilonSweepResult& r) {
    OrderedJson j;
    OrderedJson pts = OrderedJson::array();
    for (const auto& pt : r.points) {
        OrderedJson e;
        e["epsilon"] = pt.epsilon;
        e["T"] = pt.T;
        e["T_uncertainty"] = pt.T_uncertainty;
        e["T_original"] = pt.T_original;
        pts.push_back(e);
    }
    j["points"] = pts;
    j["fit"] = to_json(r.fit);
    j["theoretical_slope"] = r.theoretical_slope;
    j["max_envelope_ratio"] = r.max_envelope_ratio;
    j["bound_consistent"] = r.bound_consistent;
    return j;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string sweep_csv(const EpsilonSweepResult& r) {
    std::string s = "epsilon,T,T_uncertainty,T_original\n";
    for (const auto& pt : r.points) {
        s += g17(pt.epsilon) + "," + g17(pt.T) + "," + g17(pt.T_uncertainty) + "," +
             g17(pt.T_original) + "\n";
    }
    return s;
}

std::string delta_sweep_csv(const PowerLawFit& f) {
    std::string s = "log_delta,log_T\n";
    for (const auto& [x, y] : f.samples) s += g17(x) + "," + g17(y) + "\n";
    return s;
}

std::string sweep_plot_script(const std::string& csv_name, double theoretical_slope) {
    std::string s;
    s += "#!/usr/bin/env python3\n";
    s += "import csv, math\n";
    s += "import matplotlib\n";
    s += "matplotlib.use('Agg')\n";
    s += "import matplotlib.pyplot as plt\n\n";
    s += "eps, T = [], []\n";
    s += "with open('" + csv_name + "') as fh:\n";
    s += "    for row in csv.DictReader(fh):\n";
    s += "        eps.append(float(row['epsilon']))\n";
    s += "        T.append(float(row['T']))\n";
    s += "lx = [math.log(e) for e in eps]\n";
    s += "ly = [math.log(t) for t in T]\n";
    s += "mx = sum(lx)/len(lx); my = sum(ly)/len(ly)\n";
    s += "sl = sum((a-mx)*(b-my) for a,b in zip(lx,ly))/sum((a-mx)**2 for a in lx)\n";
    s += "ic = my - sl*mx\n";
    s += "fig, ax = plt.subplots()\n";
    s += "ax.loglog(eps, T, 'o', label='measured')\n";
    s += "ax.loglog(eps, [math.exp(ic)*e**sl for e in eps], '-', label=f'fit slope {sl:.3f}')\n";
    s += "ax.loglog(eps, [2*math.exp(ic)*e**sl for e in eps], '--', label='2x envelope')\n";
    s += "th = " + g17(theoretical_slope) + "\n";
    s += "ax.loglog(eps, [math.exp(ic)*e**th for e in eps], ':', label=f'theory slope {th:.3f}')\n";
    s += "ax.set_xlabel('epsilon'); ax.set_ylabel('lifespan T')\n";
    s += "ax.legend(); fig.savefig('" + csv_name + ".png', dpi=150)\n";
    return s;
}

std::string trajectory_csv(const Trajectory& t, const ModelParams& p) {
    std::string s = "# n=" + std::to_string(t.n) + " mu=" + g17(p.mu) + " p=" + g17(t.p) +
                    " epsilon=" + g17(p.epsilon) + " dr=" + g17(t.grid.dr) +
                    " count=" + std::to_string(t.grid.count) + "\n";
    s += "t";
    for (int i = 0; i < t.grid.count; ++i) s += ",v" + std::to_string(i);
    s += "\n";
    for (const Frame& fr : t.frames) {
        if (fr.values.empty()) continue;
        s += g17(fr.t);
        for (double v : fr.values) s += "," + g17(v);
        s += "\n";
    }
    return s;
}

std::string trajectory_binary(const Trajectory& t, const ModelParams& p) {
    std::string s;
    auto put = [&s](const void* ptr, size_t bytes) {
        s.append(static_cast<const char*>(ptr), bytes);
    };
    const char magic[8] = {'S', 'D', 'W', 'T', 'R', 'J', '0', '1'};
    put(magic, 8);
    const int32_t n = t.n, count = t.grid.count;
    const double mu = p.mu, pe = t.p, eps = p.epsilon, dr = t.grid.dr;
    put(&n, 4);
    put(&count, 4);
    put(&mu, 8);
    put(&pe, 8);
    put(&eps, 8);
    put(&dr, 8);
    int32_t frames = 0;
    for (const Frame& fr : t.frames)
        if (!fr.values.empty()) ++frames;
    put(&frames, 4);
    for (const Frame& fr : t.frames) {
        if (fr.values.empty()) continue;
        put(&fr.t, 8);
        put(fr.values.data(), 8 * fr.values.size());
    }
    return s;
}

double parse_double_strict(const std::string& s, const char* what) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad numeric value for ") + what + ": " + s);
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string("trailing characters in ") + what + ": " + s);
    return v;
}

}  // namespace sdwave
