#pragma once

#include <vector>

#include "tayrem/expression.hpp"

namespace tayrem {

// Natural cubic interpolant. On [knots[i], knots[i+1]] the value is
// a[i] + b[i]*t + c[i]*t^2 + d[i]*t^3 with t = x - knots[i]; a and c carry
// one entry per knot (c is the half second derivative, zero at both ends),
// b and d one entry per interval.
struct SplineModel {
    std::vector<double> knots;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> d;
};

SplineModel build_natural_spline(const std::vector<double>& xs,
                                 const std::vector<double>& ys);

// Piecewise evaluation; a knot-coincident x uses the interval to its right
// except at the last knot. x outside the knot range is an error.
double eval_spline(const SplineModel& model, double x);

struct BoundReport {
    double h = 0.0;
    double max_y6 = 0.0;
    double b_u = 0.0;  // 72 * h^4 * max_y6
};

// Estimates max |y6| over [lo, hi] on a uniform probe grid refined by
// golden-section search around the grid argmax, then forms the bound.
BoundReport bound_bu(const DerivativeBundle& bundle, double lo, double hi, double h,
                     int probe_points);

}  // namespace tayrem
