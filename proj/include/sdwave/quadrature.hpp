#ifndef SDWAVE_QUADRATURE_HPP
#define SDWAVE_QUADRATURE_HPP

#include <functional>

namespace sdwave {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = true;
};

struct QuadratureOptions {
    double rel_tol = 1e-13;
    double abs_tol = 1e-300;
    int max_depth = 48;
};

// Adaptive Gauss-Kronrod 7-15 panels with bisection.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           const QuadratureOptions& opt = {});

}  // namespace sdwave

#endif
