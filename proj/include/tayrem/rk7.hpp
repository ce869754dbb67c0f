#pragma once

#include <functional>
#include <vector>

#include "tayrem/errors.hpp"

namespace tayrem {

// Coefficients of an explicit Runge-Kutta method. a is strictly lower
// triangular, stored as one row per stage with i entries in row i.
struct ButcherTableau {
    std::vector<double> c;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    int order = 0;

    int stages() const { return static_cast<int>(b.size()); }
    void validate(double tol = 1e-13) const;  // throws std::invalid_argument
};

// Order-7 member of the Fehlberg 7(8) pair: 11 stages, rational coefficients.
const ButcherTableau& rk7_tableau();

// Solution values on the uniform grid nodes[i] = x_start + i*h.
struct GridSolution {
    std::vector<double> nodes;
    std::vector<double> values;
    double h = 0.0;
};

using Rhs = std::function<double(double, double)>;

GridSolution integrate(const Rhs& rhs, double x_start, double xi_start, double x_end,
                       int n_steps, const ButcherTableau& tableau = rk7_tableau());

}  // namespace tayrem
