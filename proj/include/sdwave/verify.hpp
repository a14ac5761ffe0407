#ifndef SDWAVE_VERIFY_HPP
#define SDWAVE_VERIFY_HPP

#include <string>
#include <vector>

namespace sdwave {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured margins / extremes
};

struct VerifyOptions {
    double cell_perturbation = 1.0;  // fault injection: scales C_ell before the
                                     // normalization check
    bool quick = false;              // trims sample counts (test runs)
};

// Invariant suites of exponents, specfun, transform and functionals.
// Deterministic (fixed RNG seeds).
std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt = {});

}  // namespace sdwave

#endif
