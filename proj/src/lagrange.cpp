#include "tayrem/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "tayrem/rootfind.hpp"

namespace tayrem {

namespace {

std::string default_label(double xi_z) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "xi_z_%.6f", xi_z);
    return buf;
}

// Fills constraint_flags and crossing_points from the grid. The margin
// min(xi - x0, x - xi) is positive exactly where the constraint holds;
// crossings are linear-interpolated zeros of the margin.
void annotate_constraint(LagrangeTrajectory& traj) {
    const auto& nodes = traj.grid.nodes;
    const auto& values = traj.grid.values;
    const std::size_t n = nodes.size();
    traj.constraint_flags.assign(n, false);
    traj.crossing_points.clear();
    double prev_margin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double margin = std::min(values[i] - traj.x0, nodes[i] - values[i]);
        traj.constraint_flags[i] = margin > 0.0;
        if (i > 0 && traj.constraint_flags[i] != traj.constraint_flags[i - 1]) {
            const double t = prev_margin / (prev_margin - margin);
            traj.crossing_points.push_back(nodes[i - 1] + t * (nodes[i] - nodes[i - 1]));
        }
        prev_margin = margin;
    }
}

}  // namespace

Rhs make_rhs(const DerivativeBundle& bundle, double x0) {
    if (bundle.max_order < 3)
        throw std::invalid_argument("make_rhs: bundle must carry derivatives through order 3");
    const double d1_x0 = bundle.eval(1, x0);
    return [bundle, x0, d1_x0](double x, double xi) -> double {
        const double dx = x - x0;
        if (dx == 0.0)
            throw SingularityError("right-hand side undefined at x = x0", x);
        const double d3 = bundle.eval(3, xi);
        if (std::abs(d3) < 1e-300)
            throw SingularityError("y''' vanishes at xi = " + std::to_string(xi) +
                                       " (x = " + std::to_string(x) + ")",
                                   x);
        const double num = 2.0 * (bundle.eval(1, x) - d1_x0 - bundle.eval(2, xi) * dx);
        return num / (d3 * dx * dx);
    };
}

LagrangeTrajectory solve_lagrange(const DerivativeBundle& bundle, double x0, double x_z,
                                  double xi_z, double x_end, int n_steps,
                                  std::string branch_label) {
    if (!(x0 < x_z && x_z < x_end))
        throw std::invalid_argument("solve_lagrange: need x0 < x_z < x_end");
    const double residual = xi_z_residual(bundle, x0, x_z, xi_z);
    if (std::abs(residual) > 1e-9 * std::max(1.0, std::abs(bundle.eval(0, x_z))))
        throw std::invalid_argument("solve_lagrange: xi_z does not satisfy the initial-value identity");

    LagrangeTrajectory traj;
    traj.x0 = x0;
    traj.x_z = x_z;
    traj.xi_z = xi_z;
    traj.branch_label = branch_label.empty() ? default_label(xi_z) : std::move(branch_label);
    traj.grid = integrate(make_rhs(bundle, x0), x_z, xi_z, x_end, n_steps);
    annotate_constraint(traj);
    return traj;
}

RemainderSamples remainder_samples(const LagrangeTrajectory& traj,
                                   const DerivativeBundle& bundle, double x0) {
    const double y0 = bundle.eval(0, x0);
    const double d1 = bundle.eval(1, x0);
    const auto& nodes = traj.grid.nodes;
    const auto& values = traj.grid.values;

    RemainderSamples s;
    s.nodes = nodes;
    const std::size_t n = nodes.size();
    s.r_xi.resize(n);
    s.r_act.resize(n);
    s.delta_r.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = nodes[i];
        const double dx = x - x0;
        s.r_xi[i] = 0.5 * bundle.eval(2, values[i]) * dx * dx;
        s.r_act[i] = bundle.eval(0, x) - (y0 + d1 * dx);
        s.delta_r[i] = s.r_act[i] - s.r_xi[i];
        s.max_abs_delta_r = std::max(s.max_abs_delta_r, std::abs(s.delta_r[i]));
    }
    return s;
}

LagrangeTrajectory splice(const std::vector<LagrangeTrajectory>& trajectories,
                          const std::vector<double>& switch_points) {
    if (trajectories.empty())
        throw std::invalid_argument("splice: need at least one trajectory");
    if (switch_points.size() + 1 != trajectories.size())
        throw std::invalid_argument("splice: switch points must cut one segment per trajectory");

    const LagrangeTrajectory& base = trajectories.front();
    for (const auto& t : trajectories) {
        if (t.grid.nodes != base.grid.nodes)
            throw GridMismatchError("splice: trajectories must share grid nodes");
        if (t.x0 != base.x0 || t.x_z != base.x_z)
            throw GridMismatchError("splice: trajectories must share x0 and x_z");
    }
    if (trajectories.size() == 1) return base;

    for (std::size_t i = 0; i < switch_points.size(); ++i) {
        const double sp = switch_points[i];
        if (i > 0 && !(sp > switch_points[i - 1]))
            throw std::invalid_argument("splice: switch points must be strictly increasing");
        if (!(sp > base.grid.nodes.front() && sp < base.grid.nodes.back()))
            throw std::invalid_argument("splice: switch points must lie inside the grid");
    }

    LagrangeTrajectory out;
    out.x0 = base.x0;
    out.x_z = base.x_z;
    out.xi_z = base.xi_z;
    out.branch_label = "spliced";
    out.grid.h = base.grid.h;
    out.grid.nodes = base.grid.nodes;
    out.grid.values.resize(base.grid.values.size());
    for (std::size_t i = 0; i < out.grid.nodes.size(); ++i) {
        const double x = out.grid.nodes[i];
        const std::size_t seg = static_cast<std::size_t>(
            std::lower_bound(switch_points.begin(), switch_points.end(), x) -
            switch_points.begin());
        out.grid.values[i] = trajectories[seg].grid.values[i];
    }
    annotate_constraint(out);
    return out;
}

}  // namespace tayrem
