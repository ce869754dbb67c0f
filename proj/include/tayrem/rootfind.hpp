#pragma once

#include <vector>

#include "tayrem/expression.hpp"

namespace tayrem {

// Initial data for the Lagrange-function ODE: the near-x0 sample point x_z
// and the residual roots xi_z found between the search bounds.
struct InitialValueProblemSeed {
    double x0 = 0.0;
    double x_z = 0.0;
    std::vector<double> roots;
    double residual_tolerance = 1e-12;
};

// y(x_z) - y(x0) - y'(x0)(x_z - x0) - y''(xi)(x_z - x0)^2 / 2.
// Zero exactly when xi plays the Lagrange role for the step x0 -> x_z.
double xi_z_residual(const DerivativeBundle& bundle, double x0, double x_z, double xi);

// Scans [search_lo, search_hi] on a uniform grid, brackets every sign change
// of the residual and refines each bracket by bisection to width
// 1e-14 * max(1, |xi|). Roots are returned in increasing order.
std::vector<double> find_xi_z(const DerivativeBundle& bundle, double x0, double x_z,
                              double search_lo, double search_hi,
                              int scan_points = 20001);

}  // namespace tayrem
