#pragma once

#include <string>
#include <vector>

#include "tayrem/expression.hpp"
#include "tayrem/lagrange.hpp"
#include "tayrem/spline.hpp"

namespace tayrem {

// Coefficients c_k = y_k(x0)/k!; evaluation by Horner in (x - x0).
struct TaylorPolynomial {
    double x0 = 0.0;
    std::vector<double> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    double operator()(double x) const;
};

TaylorPolynomial taylor_poly(const DerivativeBundle& bundle, double x0, int degree);

enum class Mode { factored, direct };

Mode mode_from_string(const std::string& name);      // throws ConfigError
std::string mode_to_string(Mode mode);

// T1 plus a spline reconstruction P_R of the remainder. In factored mode the
// spline carries s(x) = y''(xi(x))/2 and P_R(x) = spline(x)*(x-x0)^2; in
// direct mode the spline carries R_xi itself. Left of the first knot the
// factored spline value is frozen at the first knot; the direct value blends
// linearly from 0 at x0. Evaluation outside [x0, x_end] is an error.
struct EnhancedApproximant {
    TaylorPolynomial t1;
    SplineModel remainder_model;
    Mode mode = Mode::factored;
    double x0 = 0.0;
    double x_z = 0.0;
    double x_end = 0.0;

    double operator()(double x) const;
};

EnhancedApproximant build_enhanced(const TaylorPolynomial& t1,
                                   const LagrangeTrajectory& traj,
                                   const DerivativeBundle& bundle, Mode mode);

// One comparison row: T5 error, enhanced-approximant error, spline bound.
// delta_cs is measured where the remainder data lives (the spline knots);
// delta_cs_dense re-measures it across the full probe grid between knots.
struct MetricsRow {
    std::string label;
    double lo = 0.0;
    double hi = 0.0;
    double delta_t = 0.0;
    double delta_cs = 0.0;
    double delta_cs_dense = 0.0;
    double b_u = 0.0;
};

MetricsRow metrics(const DerivativeBundle& bundle, const EnhancedApproximant& enhanced,
                   const TaylorPolynomial& t5, double lo, double hi, int probe_points,
                   const std::string& label = {}, bool include_near_x0 = false);

}  // namespace tayrem
