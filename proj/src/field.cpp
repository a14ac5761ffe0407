#include "sdwave/field.hpp"

#include <cmath>
#include <stdexcept>

#include "sdwave/specfun.hpp"

namespace sdwave {

void RadialGrid::validate() const {
    if (!(dr > 0.0)) throw std::domain_error("RadialGrid: dr must be positive");
    if (count < 64) throw std::domain_error("RadialGrid: count must be >= 64");
}

void RadialField::validate() const {
    grid.validate();
    if (static_cast<int>(values.size()) != grid.count)
        throw std::domain_error("RadialField: values length does not match grid");
    for (double v : values)
        if (!std::isfinite(v)) throw std::domain_error("RadialField: nonfinite value");
}

void DataProfile::validate() const {
    if (!(amplitude0 > 0.0) || !(amplitude1 > 0.0))
        throw std::domain_error("DataProfile: amplitudes must be positive");
    if (smoothness < 2) throw std::domain_error("DataProfile: smoothness must be >= 2");
    if (!(R > 0.0)) throw std::domain_error("DataProfile: R must be positive");
}

double DataProfile::position(double r) const {
    const double x = 1.0 - (r / R) * (r / R);
    return x > 0.0 ? amplitude0 * std::pow(x, smoothness) : 0.0;
}

double DataProfile::velocity(double r) const {
    const double x = 1.0 - (r / R) * (r / R);
    return x > 0.0 ? amplitude1 * std::pow(x, smoothness) : 0.0;
}

void SolverConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 0.9)) throw std::domain_error("SolverConfig: cfl must lie in (0, 0.9]");
    if (!(blowup_threshold >= 1e6)) throw std::domain_error("SolverConfig: blowup_threshold must be >= 1e6");
    if (!(t_max > 0.0)) throw std::domain_error("SolverConfig: t_max must be positive");
    if (!(margin >= 0.0)) throw std::domain_error("SolverConfig: margin must be nonnegative");
    if (count < 64) throw std::domain_error("SolverConfig: count must be >= 64");
    if (output_every < 1) throw std::domain_error("SolverConfig: output_every must be >= 1");
}

double radial_integral(const RadialField& f, int n) {
    const auto& v = f.values;
    const double dr = f.grid.dr;
    double acc = 0.0;
    for (int i = 0; i < f.grid.count; ++i) {
        const double w = (i == 0 || i == f.grid.count - 1) ? 0.5 : 1.0;
        acc += w * v[i] * std::pow(f.grid.r(i), n - 1);
    }
    return unit_sphere_area(n) * acc * dr;
}

double radial_integral_abs_pow(const RadialField& f, int n, double p) {
    const auto& v = f.values;
    const double dr = f.grid.dr;
    double acc = 0.0;
    for (int i = 0; i < f.grid.count; ++i) {
        const double w = (i == 0 || i == f.grid.count - 1) ? 0.5 : 1.0;
        acc += w * std::pow(std::abs(v[i]), p) * std::pow(f.grid.r(i), n - 1);
    }
    return unit_sphere_area(n) * acc * dr;
}

double sup_abs(const std::vector<double>& values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double support_radius(const RadialField& f, double tol) {
    for (int i = f.grid.count - 1; i >= 0; --i)
        if (std::abs(f.values[i]) > tol) return f.grid.r(i);
    return 0.0;
}

}  // namespace sdwave
