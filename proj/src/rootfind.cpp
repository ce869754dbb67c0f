#include "tayrem/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace tayrem {

double xi_z_residual(const DerivativeBundle& bundle, double x0, double x_z, double xi) {
    // The first three terms cancel to O((x_z-x0)^3). In double precision that
    // cancellation noise swamps the xi-dependent term once the offset drops
    // below ~1e-4, so the whole chain is evaluated in long double.
    const long double d = static_cast<long double>(x_z) - static_cast<long double>(x0);
    const long double r = evaluate_ld(bundle.order(0), x_z) -
                          evaluate_ld(bundle.order(0), x0) -
                          evaluate_ld(bundle.order(1), x0) * d -
                          evaluate_ld(bundle.order(2), xi) * d * d / 2.0L;
    return static_cast<double>(r);
}

namespace {

double refine_bisect(const DerivativeBundle& bundle, double x0, double x_z,
                     double lo, double hi, double f_lo) {
    while (hi - lo > 1e-14 * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // ulp floor
        const double f_mid = xi_z_residual(bundle, x0, x_z, mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> find_xi_z(const DerivativeBundle& bundle, double x0, double x_z,
                              double search_lo, double search_hi, int scan_points) {
    if (!(search_lo < search_hi))
        throw std::invalid_argument("find_xi_z: search_lo must be below search_hi");
    if (scan_points < 100)
        throw std::invalid_argument("find_xi_z: scan_points must be at least 100");

    const double step = (search_hi - search_lo) / (scan_points - 1);
    std::vector<double> roots;
    double prev_x = search_lo;
    double prev_f = xi_z_residual(bundle, x0, x_z, prev_x);
    for (int i = 1; i < scan_points; ++i) {
        const double x = (i == scan_points - 1) ? search_hi : search_lo + i * step;
        const double fx = xi_z_residual(bundle, x0, x_z, x);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (fx != 0.0 && (prev_f < 0.0) != (fx < 0.0)) {
            // Near-tangent brackets whose residual barely moves are noise.
            if (std::abs(fx - prev_f) / (x - prev_x) >= 1e-13)
                roots.push_back(refine_bisect(bundle, x0, x_z, prev_x, x, prev_f));
        }
        prev_x = x;
        prev_f = fx;
    }
    if (prev_f == 0.0) roots.push_back(prev_x);

    // Merge roots that bisection cannot tell apart.
    std::vector<double> distinct;
    for (double r : roots) {
        if (distinct.empty() || r - distinct.back() > 1e-13 * std::max(1.0, std::abs(r)))
            distinct.push_back(r);
    }
    if (distinct.empty())
        throw NoRootError("no sign change on the scan grid; widen the search or refine it");
    return distinct;
}

}  // namespace tayrem
