#ifndef SDWAVE_REPORT_HPP
#define SDWAVE_REPORT_HPP

#include <string>

#include <json.hpp>

#include "sdwave/exponents.hpp"
#include "sdwave/field.hpp"
#include "sdwave/fit.hpp"
#include "sdwave/ode_oracle.hpp"
#include "sdwave/radial_solver.hpp"
#include "sdwave/trajectory.hpp"

namespace sdwave {

using OrderedJson = nlohmann::ordered_json;

constexpr const char* kArtifactName = "sdwave";
constexpr const char* kArtifactVersion = "1.0.0";

OrderedJson report_header(const std::string& command);
OrderedJson to_json(const ModelParams& p);
OrderedJson to_json(const DataProfile& p);
OrderedJson to_json(const SolverConfig& c);
OrderedJson to_json(const BlowupReport& r);
OrderedJson to_json(const PowerLawFit& f);
OrderedJson to_json(const EpsilonSweepResult& r);

// Atomic-enough plain write; UTF-8, '\n' endings, stable key order comes
// from OrderedJson insertion order.
void write_text_file(const std::string& path, const std::string& contents);

// CSV with '.' decimals and %.17g round-trip formatting.
std::string sweep_csv(const EpsilonSweepResult& r);
std::string delta_sweep_csv(const PowerLawFit& f);

// matplotlib script plotting a sweep CSV with the fitted envelope overlaid
std::string sweep_plot_script(const std::string& csv_name, double theoretical_slope);

// trajectory writers: header (n, mu, p, epsilon, grid), then (t, values...)
std::string trajectory_csv(const Trajectory& t, const ModelParams& p);
std::string trajectory_binary(const Trajectory& t, const ModelParams& p);

double parse_double_strict(const std::string& s, const char* what);

}  // namespace sdwave

#endif
