#ifndef SDWAVE_FUNCTIONALS_HPP
#define SDWAVE_FUNCTIONALS_HPP

#include <vector>

#include "sdwave/exponents.hpp"
#include "sdwave/field.hpp"
#include "sdwave/specfun.hpp"
#include "sdwave/trajectory.hpp"

namespace sdwave {

// F(t) = int w dx  by grid trapezoid.
double functional_F(const RadialField& field, int n);

// F1(t) = int w psi(t, x) dx, psi = lambda(t) phi(|x|); the phi factor is
// evaluated through its log with a max-shift and compensated summation so
// large light cones stay in range.
double functional_F1(const RadialField& field, double t, const LambdaWeight& w, int n);

// Time series of the functionals along a transformed-picture trajectory.
struct FunctionalTrace {
    std::vector<double> times;
    std::vector<double> F;
    std::vector<double> F1;
    std::vector<double> lp;  // int |w|^p dx per frame, from the solver
    double ell = 0.0;
    double t0 = 0.0;
};

FunctionalTrace build_trace(const Trajectory& traj, const LambdaWeight& w);

// min over the window t >= t2 of F1(t) t^ell / epsilon (t2 defaults to the
// operational stand-in 2 t0 + 1).  Positive return validates the lower
// bound's shape.  Throws std::out_of_range when the window is empty.
double check_F1_lower(const FunctionalTrace& trace, double epsilon, double t2);
double default_t2(double t0);

// Weighted-integral estimate: ratio of
//   int_0^{R+phase(t)} [lambda(t) phi(r)]^{p/(p-1)} r^{n-1} dr     (log-space quadrature)
// to  t^{-ell p/(2(p-1))} (R + phase(t))^{n-1-((n-1)/2) p/(p-1)}   (C = 1),
// where phase(t) = t^{ell+1}/(ell+1) is the decay phase of lambda, so the
// leading exponentials cancel.  Throws std::runtime_error on quadrature
// failure.
double lemma22_ratio(double t, const ModelParams& params, const LambdaWeight& w);

// Per-frame implied constants of the differential inequalities:
//   c1 = F'' / (<t>^{2l - n(l+1)(p-1)} |F|^p)   with F'' = <t>^{sigma} int|w|^p,
//   c2 = F'' (int_{cone} psi^{p'} dx)^{p-1} t^{p l - sigma} / eps^p.
// Frames with |F| below tiny are skipped and counted.
struct ChainReport {
    double min_c1 = 0.0;
    double min_c2 = 0.0;
    int frames_used = 0;
    int frames_skipped = 0;
};

ChainReport check_chain(const Trajectory& traj, const ModelParams& params,
                        const LambdaWeight& w, double t_min);

// Per-frame Hoelder consistency: largest LHS/RHS of
//   |F|^p  <= (int |w|^p dx) vol(B_{R+Lambda(t)})^{p-1}
//   |F1|^p <= (int |w|^p dx) (int_{B_{R+Lambda(t)}} psi^{p'} dx)^{p-1}
// with all sums over the same grid weights (must be <= 1 + tolerance).
struct HoelderReport {
    double max_ratio_F = 0.0;
    double max_ratio_F1 = 0.0;
    int frames = 0;
};

HoelderReport check_hoelder(const Trajectory& traj, const ModelParams& params,
                            const LambdaWeight& w);

}  // namespace sdwave

#endif
