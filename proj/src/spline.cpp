#include "tayrem/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tayrem {

SplineModel build_natural_spline(const std::vector<double>& xs,
                                 const std::vector<double>& ys) {
    if (xs.size() < 3) throw std::invalid_argument("spline: need at least 3 points");
    if (xs.size() != ys.size())
        throw std::invalid_argument("spline: xs and ys must have equal length");
    const std::size_t n = xs.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
        if (!(xs[i + 1] > xs[i]))
            throw std::invalid_argument("spline: knots must be strictly increasing");

    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = xs[i + 1] - xs[i];

    // Symmetric tridiagonal system for the half second derivatives c;
    // diagonally dominant, so plain forward elimination needs no pivoting.
    std::vector<double> alpha(n, 0.0), l(n + 1), mu(n + 1), z(n + 1);
    for (std::size_t i = 1; i < n; ++i)
        alpha[i] = 3.0 * (ys[i + 1] - ys[i]) / h[i] - 3.0 * (ys[i] - ys[i - 1]) / h[i - 1];
    l[0] = 1.0;
    mu[0] = 0.0;
    z[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        l[i] = 2.0 * (xs[i + 1] - xs[i - 1]) - h[i - 1] * mu[i - 1];
        mu[i] = h[i] / l[i];
        z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l[i];
    }

    SplineModel m;
    m.knots = xs;
    m.a = ys;
    m.b.resize(n);
    m.c.assign(n + 1, 0.0);
    m.d.resize(n);
    for (std::size_t j = n; j-- > 0;) {
        m.c[j] = z[j] - mu[j] * m.c[j + 1];
        m.b[j] = (ys[j + 1] - ys[j]) / h[j] - h[j] * (m.c[j + 1] + 2.0 * m.c[j]) / 3.0;
        m.d[j] = (m.c[j + 1] - m.c[j]) / (3.0 * h[j]);
    }
    return m;
}

double eval_spline(const SplineModel& model, double x) {
    const auto& xs = model.knots;
    if (x < xs.front() || x > xs.back())
        throw RangeError("spline evaluated outside its knot range");
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    if (i > 0) --i;
    if (i >= model.b.size()) i = model.b.size() - 1;  // x at the last knot
    const double t = x - xs[i];
    return model.a[i] + t * (model.b[i] + t * (model.c[i] + t * model.d[i]));
}

namespace {

// Golden-section maximization of f on [lo, hi]; f is unimodal near the grid
// argmax, and the endpoints have been probed already.
template <typename F>
double golden_max(F&& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-12 * std::max(1.0, std::abs(b))) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

BoundReport bound_bu(const DerivativeBundle& bundle, double lo, double hi, double h,
                     int probe_points) {
    if (!(hi > lo)) throw std::invalid_argument("bound_bu: need lo < hi");
    if (!(h > 0.0)) throw std::invalid_argument("bound_bu: need h > 0");
    if (probe_points < 1000)
        throw std::invalid_argument("bound_bu: probe_points must be at least 1000");

    const auto f = [&bundle](double x) { return std::abs(bundle.eval(6, x)); };
    const double step = (hi - lo) / (probe_points - 1);
    double best_x = lo;
    double best_f = f(lo);
    for (int i = 1; i < probe_points; ++i) {
        const double x = (i == probe_points - 1) ? hi : lo + i * step;
        const double v = f(x);
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
    }
    const double ref_lo = std::max(lo, best_x - step);
    const double ref_hi = std::min(hi, best_x + step);
    if (ref_hi > ref_lo) best_f = std::max(best_f, golden_max(f, ref_lo, ref_hi));

    BoundReport r;
    r.h = h;
    r.max_y6 = best_f;
    r.b_u = 72.0 * h * h * h * h * best_f;
    return r;
}

}  // namespace tayrem
