#pragma once

#include <string>
#include <vector>

#include "tayrem/expression.hpp"
#include "tayrem/rk7.hpp"

namespace tayrem {

// One solution branch xi(x) of the Lagrange-function ODE, integrated over
// [x_z, x_end], with the mean-value constraint x0 < xi(x) < x checked at
// every node.
struct LagrangeTrajectory {
    double x0 = 0.0;
    double x_z = 0.0;
    double xi_z = 0.0;
    std::string branch_label;
    GridSolution grid;
    std::vector<bool> constraint_flags;
    std::vector<double> crossing_points;  // linear-interpolated flag flips
};

struct RemainderSamples {
    std::vector<double> nodes;
    std::vector<double> r_xi;     // y''(xi(x))/2 * (x - x0)^2
    std::vector<double> r_act;    // y(x) - T1(x)
    std::vector<double> delta_r;  // r_act - r_xi
    double max_abs_delta_r = 0.0;
};

// dxi/dx = 2*(y'(x) - y'(x0) - y''(xi)(x - x0)) / (y'''(xi)(x - x0)^2).
// Throws SingularityError at x = x0 and wherever y''' vanishes.
Rhs make_rhs(const DerivativeBundle& bundle, double x0);

LagrangeTrajectory solve_lagrange(const DerivativeBundle& bundle, double x0, double x_z,
                                  double xi_z, double x_end, int n_steps,
                                  std::string branch_label = {});

RemainderSamples remainder_samples(const LagrangeTrajectory& traj,
                                   const DerivativeBundle& bundle, double x0);

// Composite trajectory taking values from trajectories[k] on segment k, where
// segment boundaries are the switch points (a node at a switch point belongs
// to the left segment). Constraint flags and crossings are recomputed.
LagrangeTrajectory splice(const std::vector<LagrangeTrajectory>& trajectories,
                          const std::vector<double>& switch_points);

}  // namespace tayrem
