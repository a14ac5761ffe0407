#ifndef SDWAVE_FIT_HPP
#define SDWAVE_FIT_HPP

#include <span>
#include <utility>
#include <vector>

namespace sdwave {

// Least-squares line through (x_i, y_i); r_squared in [0, 1].
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Log-log regression of y against x; samples keep the (ln x, ln y) pairs.
struct PowerLawFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> samples;

    // fitted envelope  exp(intercept) x^slope
    double envelope(double x) const;
};

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace sdwave

#endif
