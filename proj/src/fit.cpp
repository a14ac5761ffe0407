#include "sdwave/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace sdwave {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need at least two matched samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: degenerate abscissae");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_power_law: need at least two matched samples");
    std::vector<double> lx(x.size()), ly(y.size());
    PowerLawFit f;
    f.samples.reserve(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_power_law: samples must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        f.samples.emplace_back(lx[i], ly[i]);
    }
    const LinearFit lf = fit_line(lx, ly);
    f.slope = lf.slope;
    f.intercept = lf.intercept;
    f.r_squared = lf.r_squared;
    return f;
}

double PowerLawFit::envelope(double x) const {
    return std::exp(intercept) * std::pow(x, slope);
}

}  // namespace sdwave
