#include "tayrem/enhance.hpp"

#include <cmath>
#include <stdexcept>

namespace tayrem {

double TaylorPolynomial::operator()(double x) const {
    const double t = x - x0;
    double acc = 0.0;
    for (std::size_t i = coefficients.size(); i-- > 0;)
        acc = acc * t + coefficients[i];
    return acc;
}

TaylorPolynomial taylor_poly(const DerivativeBundle& bundle, double x0, int degree) {
    if (degree < 0 || degree > bundle.max_order)
        throw std::invalid_argument("taylor_poly: degree out of range");
    TaylorPolynomial p;
    p.x0 = x0;
    p.coefficients.resize(static_cast<std::size_t>(degree) + 1);
    double factorial = 1.0;
    for (int k = 0; k <= degree; ++k) {
        if (k > 1) factorial *= k;
        p.coefficients[static_cast<std::size_t>(k)] = bundle.eval(k, x0) / factorial;
    }
    return p;
}

Mode mode_from_string(const std::string& name) {
    if (name == "factored") return Mode::factored;
    if (name == "direct") return Mode::direct;
    throw ConfigError("mode must be 'factored' or 'direct', got '" + name + "'");
}

std::string mode_to_string(Mode mode) {
    return mode == Mode::factored ? "factored" : "direct";
}

double EnhancedApproximant::operator()(double x) const {
    if (x < x0 || x > x_end)
        throw RangeError("enhanced approximant evaluated outside its valid interval");
    double p_r;
    if (x < x_z) {
        const double first = remainder_model.a.front();
        if (mode == Mode::factored) {
            p_r = first * (x - x0) * (x - x0);
        } else {
            p_r = first * (x - x0) / (x_z - x0);
        }
    } else {
        const double s = eval_spline(remainder_model, x);
        p_r = mode == Mode::factored ? s * (x - x0) * (x - x0) : s;
    }
    return t1(x) + p_r;
}

EnhancedApproximant build_enhanced(const TaylorPolynomial& t1,
                                   const LagrangeTrajectory& traj,
                                   const DerivativeBundle& bundle, Mode mode) {
    if (t1.degree() != 1)
        throw std::invalid_argument("build_enhanced: base polynomial must have degree 1");
    if (traj.x0 != t1.x0)
        throw std::invalid_argument("build_enhanced: trajectory and polynomial disagree on x0");

    const auto& nodes = traj.grid.nodes;
    const auto& values = traj.grid.values;
    std::vector<double> samples(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double half_d2 = 0.5 * bundle.eval(2, values[i]);
        if (mode == Mode::factored) {
            samples[i] = half_d2;
        } else {
            const double dx = nodes[i] - traj.x0;
            samples[i] = half_d2 * dx * dx;
        }
    }

    EnhancedApproximant e;
    e.t1 = t1;
    e.mode = mode;
    e.x0 = traj.x0;
    e.x_z = nodes.front();
    e.x_end = nodes.back();
    e.remainder_model = build_natural_spline(nodes, samples);
    return e;
}

MetricsRow metrics(const DerivativeBundle& bundle, const EnhancedApproximant& enhanced,
                   const TaylorPolynomial& t5, double lo, double hi, int probe_points,
                   const std::string& label, bool include_near_x0) {
    if (probe_points < 1000)
        throw std::invalid_argument("metrics: probe_points must be at least 1000");
    if (!(hi > lo)) throw std::invalid_argument("metrics: need lo < hi");

    MetricsRow row;
    row.label = label;
    row.lo = lo;
    row.hi = hi;

    const double dense_lo = include_near_x0 ? enhanced.x0 : enhanced.x_z;
    const double step = (hi - lo) / (probe_points - 1);
    for (int i = 0; i < probe_points; ++i) {
        const double x = (i == probe_points - 1) ? hi : lo + i * step;
        const double y = bundle.eval(0, x);
        row.delta_t = std::max(row.delta_t, std::abs(y - t5(x)));
        if (x >= dense_lo && x <= enhanced.x_end)
            row.delta_cs_dense = std::max(row.delta_cs_dense, std::abs(y - enhanced(x)));
    }

    for (double k : enhanced.remainder_model.knots) {
        if (k < lo || k > hi) continue;
        row.delta_cs = std::max(row.delta_cs, std::abs(bundle.eval(0, k) - enhanced(k)));
    }

    // The bound applies to a uniform sample spacing only.
    const auto& knots = enhanced.remainder_model.knots;
    const double h = knots[1] - knots[0];
    for (std::size_t i = 1; i + 1 < knots.size(); ++i)
        if (std::abs(knots[i + 1] - knots[i] - h) > 1e-12 * std::max(1.0, std::abs(h)))
            throw std::invalid_argument("metrics: remainder knots are not uniformly spaced");
    row.b_u = bound_bu(bundle, lo, hi, h, probe_points).b_u;
    return row;
}

}  // namespace tayrem
