#ifndef SDWAVE_TRAJECTORY_HPP
#define SDWAVE_TRAJECTORY_HPP

#include <vector>

#include "sdwave/field.hpp"

namespace sdwave {

// One output snapshot.  Scalar diagnostics are always present; `values`
// is populated only when the solver keeps fields.
struct Frame {
    double t = 0.0;
    double sup = 0.0;         // sup_r |w|
    double F = 0.0;           // int w dx
    double lp = 0.0;          // int |w|^p dx
    double support_r = 0.0;   // largest r with |w| > 1e-10
    std::vector<double> values;
};

struct Trajectory {
    RadialGrid grid;
    int n = 2;
    double p = 2.0;
    double ell = 0.0;
    double t0 = 0.0;
    double source_exponent = 0.0;
    bool transformed_picture = false;
    std::vector<Frame> frames;

    // Field at time t by quadratic interpolation over the three nearest
    // frames (linear at the ends).  Throws std::out_of_range outside the
    // recorded window; requires frames with values.
    std::vector<double> sample(double t) const;

    double first_time() const;
    double last_time() const;
};

}  // namespace sdwave

#endif
