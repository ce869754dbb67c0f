#include "tayrem/rk7.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tayrem {

void ButcherTableau::validate(double tol) const {
    const std::size_t s = b.size();
    if (s == 0) throw std::invalid_argument("tableau: no stages");
    if (c.size() != s || a.size() != s)
        throw std::invalid_argument("tableau: c, a, b must all have one entry per stage");
    if (order < 1) throw std::invalid_argument("tableau: declared order must be positive");
    for (std::size_t i = 0; i < s; ++i) {
        if (a[i].size() != i)
            throw std::invalid_argument("tableau: row " + std::to_string(i) +
                                        " must have exactly " + std::to_string(i) +
                                        " coefficients (explicit method)");
        double row = 0.0;
        for (double v : a[i]) row += v;
        if (std::abs(row - c[i]) > tol)
            throw std::invalid_argument("tableau: row " + std::to_string(i) +
                                        " sum does not match c");
    }
    double wsum = 0.0;
    for (double v : b) wsum += v;
    if (std::abs(wsum - 1.0) > tol)
        throw std::invalid_argument("tableau: weights must sum to 1");
}

const ButcherTableau& rk7_tableau() {
    static const ButcherTableau table = [] {
        ButcherTableau t;
        t.order = 7;
        t.c = {0.0,       2.0 / 27, 1.0 / 9, 1.0 / 6, 5.0 / 12, 1.0 / 2,
               5.0 / 6,   1.0 / 6,  2.0 / 3, 1.0 / 3, 1.0};
        t.a = {
            {},
            {2.0 / 27},
            {1.0 / 36, 1.0 / 12},
            {1.0 / 24, 0.0, 1.0 / 8},
            {5.0 / 12, 0.0, -25.0 / 16, 25.0 / 16},
            {1.0 / 20, 0.0, 0.0, 1.0 / 4, 1.0 / 5},
            {-25.0 / 108, 0.0, 0.0, 125.0 / 108, -65.0 / 27, 125.0 / 54},
            {31.0 / 300, 0.0, 0.0, 0.0, 61.0 / 225, -2.0 / 9, 13.0 / 900},
            {2.0, 0.0, 0.0, -53.0 / 6, 704.0 / 45, -107.0 / 9, 67.0 / 90, 3.0},
            {-91.0 / 108, 0.0, 0.0, 23.0 / 108, -976.0 / 135, 311.0 / 54, -19.0 / 60,
             17.0 / 6, -1.0 / 12},
            {2383.0 / 4100, 0.0, 0.0, -341.0 / 164, 4496.0 / 1025, -301.0 / 82,
             2133.0 / 4100, 45.0 / 82, 45.0 / 164, 18.0 / 41},
        };
        t.b = {41.0 / 840, 0.0, 0.0, 0.0, 0.0, 34.0 / 105, 9.0 / 35, 9.0 / 35,
               9.0 / 280, 9.0 / 280, 41.0 / 840};
        t.validate();
        return t;
    }();
    return table;
}

GridSolution integrate(const Rhs& rhs, double x_start, double xi_start, double x_end,
                       int n_steps, const ButcherTableau& tableau) {
    if (n_steps < 1) throw std::invalid_argument("integrate: n_steps must be at least 1");
    if (!(x_end > x_start)) throw std::invalid_argument("integrate: x_end must exceed x_start");
    tableau.validate();

    const int s = tableau.stages();
    const double h = (x_end - x_start) / n_steps;
    GridSolution g;
    g.h = h;
    g.nodes.resize(static_cast<std::size_t>(n_steps) + 1);
    g.values.resize(static_cast<std::size_t>(n_steps) + 1);
    g.nodes[0] = x_start;
    g.values[0] = xi_start;

    std::vector<double> k(static_cast<std::size_t>(s));
    double y = xi_start;
    for (int i = 0; i < n_steps; ++i) {
        const double x = x_start + i * h;
        for (int j = 0; j < s; ++j) {
            double acc = 0.0;
            for (int m = 0; m < j; ++m) acc += tableau.a[j][m] * k[m];
            const double xj = x + tableau.c[j] * h;
            k[j] = rhs(xj, y + h * acc);
            if (!std::isfinite(k[j]))
                throw NonFiniteError("integration stage produced a non-finite value at x = " +
                                         std::to_string(xj),
                                     xj);
        }
        double acc = 0.0;
        for (int j = 0; j < s; ++j) acc += tableau.b[j] * k[j];
        y += h * acc;
        if (!std::isfinite(y))
            throw NonFiniteError("integration state became non-finite at x = " +
                                     std::to_string(x + h),
                                 x + h);
        g.nodes[static_cast<std::size_t>(i) + 1] = x_start + (i + 1) * h;
        g.values[static_cast<std::size_t>(i) + 1] = y;
    }
    return g;
}

}  // namespace tayrem
