#ifndef SDWAVE_FIELD_HPP
#define SDWAVE_FIELD_HPP

#include <vector>

namespace sdwave {

// Uniform radial grid, node i at r = i * dr.
struct RadialGrid {
    double dr = 0.0;
    int count = 0;

    double r(int i) const { return dr * i; }
    double r_max() const { return dr * (count - 1); }
    void validate() const;  // dr > 0, count >= 64
};

// Sampled radial function on a RadialGrid.
struct RadialField {
    RadialGrid grid;
    std::vector<double> values;

    void validate() const;  // lengths agree, values finite
};

// Initial data shape  u_i(r) = amplitude_i (1 - (r/R)^2)_+^k: nonnegative,
// supported in [0, R], in H^1 x L^2, with positive plain and phi-weighted
// averages.
struct DataProfile {
    double amplitude0 = 2.0;
    double amplitude1 = 2.0;
    int smoothness = 3;  // k >= 2
    double R = 1.0;

    void validate() const;
    double position(double r) const;
    double velocity(double r) const;
};

struct SolverConfig {
    double cfl = 0.45;               // in (0, 0.9]
    double blowup_threshold = 1e6;   // >= 1e6
    double t_max = 10.0;
    double margin = 1.0;             // extra grid beyond the light cone
    int count = 2048;                // grid nodes, >= 64
    int output_every = 8;            // frame cadence in steps
    bool keep_fields = true;         // store field values per frame
    bool source_enabled = true;      // linear test hook when false

    void validate() const;
};

// Trapezoid quadrature against the measure r^{n-1} dr on the grid,
// multiplied by |S^{n-1}|; i.e. the integral of a radial function over R^n.
double radial_integral(const RadialField& f, int n);

// Same for |f|^p.
double radial_integral_abs_pow(const RadialField& f, int n, double p);

double sup_abs(const std::vector<double>& values);

// Largest r with |f| > tol (0 if none).
double support_radius(const RadialField& f, double tol = 1e-10);

}  // namespace sdwave

#endif
