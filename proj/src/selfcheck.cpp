#include "tayrem/selfcheck.hpp"

#include <cmath>
#include <cstdio>

#include "tayrem/errors.hpp"
#include "tayrem/expression.hpp"
#include "tayrem/lagrange.hpp"
#include "tayrem/rk7.hpp"
#include "tayrem/rootfind.hpp"
#include "tayrem/spline.hpp"

namespace tayrem {

namespace {

std::string detailf(const char* fmt, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

// y = x^3 about x0 = 0 forces xi(x) = x/3.
CheckResult check_cubic() {
    CheckResult r{"cubic xi(x) = x/3", false, ""};
    DerivativeBundle bundle = make_bundle(parse_expression("x^3"), 6, 0.0, 10.0);
    double x_z = 0.0005;
    auto roots = find_xi_z(bundle, 0.0, x_z, 0.0, 1.0);
    LagrangeTrajectory traj = solve_lagrange(bundle, 0.0, x_z, roots.front(), 9.0, 10000);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.grid.nodes.size(); ++i)
        worst = std::max(worst, std::abs(traj.grid.values[i] - traj.grid.nodes[i] / 3.0));
    r.passed = worst <= 1e-10;
    r.detail = detailf("max |xi - x/3| = %.3e", worst);
    return r;
}

// y = exp(x) about x0 = 0 forces xi(x) = ln(2 (e^x - 1 - x) / x^2).
CheckResult check_exponential() {
    CheckResult r{"exponential xi(x) closed form", false, ""};
    DerivativeBundle bundle = make_bundle(parse_expression("exp(x)"), 6, 0.0, 10.0);
    double x_z = 0.0005;
    auto roots = find_xi_z(bundle, 0.0, x_z, 0.0, 1.0);
    LagrangeTrajectory traj = solve_lagrange(bundle, 0.0, x_z, roots.front(), 9.0, 10000);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.grid.nodes.size(); ++i) {
        double x = traj.grid.nodes[i];
        double exact = std::log(2.0 * (std::expm1(x) - x) / (x * x));
        worst = std::max(worst, std::abs(traj.grid.values[i] - exact));
    }
    r.passed = worst <= 1e-9;
    r.detail = detailf("max |xi - ln(2(e^x-1-x)/x^2)| = %.3e", worst);
    return r;
}

// Halving the step of y' = y over [0, 5] must cut the error ~2^7.
CheckResult check_order() {
    CheckResult r{"integrator order 7", false, ""};
    Rhs rhs = [](double, double y) { return y; };
    double exact = std::exp(5.0);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int n : {16, 32, 64, 128}) {
        GridSolution sol = integrate(rhs, 0.0, 1.0, 5.0, n, rk7_tableau());
        double err = std::abs(sol.values.back() - exact);
        if (err <= 0) continue;
        double lx = std::log2(static_cast<double>(n));
        double ly = std::log2(err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 3) {
        r.detail = "errors at roundoff, no slope to fit";
        return r;
    }
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    r.passed = std::abs(slope + 7.0) <= 0.3;
    r.detail = detailf("fitted slope %.3f", slope);
    return r;
}

// A natural cubic spline reproduces straight-line data exactly.
CheckResult check_spline() {
    CheckResult r{"spline linear reproduction", false, ""};
    std::vector<double> xs, ys;
    for (int i = 0; i <= 4; ++i) {
        xs.push_back(static_cast<double>(i));
        ys.push_back(2.0 * i + 1.0);
    }
    SplineModel model = build_natural_spline(xs, ys);
    double worst = 0.0;
    for (int k = 0; k <= 30; ++k) {
        double x = 4.0 * k / 30.0;
        worst = std::max(worst, std::abs(eval_spline(model, x) - (2.0 * x + 1.0)));
    }
    bool ends_flat = model.c.front() == 0.0 && model.c.back() == 0.0;
    r.passed = worst <= 1e-13 && ends_flat;
    r.detail = detailf("max deviation %.3e", worst) +
               (ends_flat ? "" : ", end second derivatives nonzero");
    return r;
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
    std::vector<CheckResult> out;
    for (auto* check : {check_cubic, check_exponential, check_order, check_spline}) {
        try {
            out.push_back(check());
        } catch (const std::exception& e) {
            out.push_back({"check threw", false, e.what()});
        }
    }
    return out;
}

}  // namespace tayrem
