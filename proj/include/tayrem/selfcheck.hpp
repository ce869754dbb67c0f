#pragma once

#include <string>
#include <vector>

namespace tayrem {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Four closed-form cross-checks of the pipeline: the cubic's exact Lagrange
// function, the exponential's, the integrator's convergence order, and the
// spline on data it must reproduce exactly.
std::vector<CheckResult> run_selfcheck();

}  // namespace tayrem
