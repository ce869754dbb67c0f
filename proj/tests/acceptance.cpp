// Acceptance gate: nine checks against the stored reference behavior, one
// verdict line each. Exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tayrem/expression.hpp"
#include "tayrem/experiment.hpp"
#include "tayrem/lagrange.hpp"
#include "tayrem/rk7.hpp"
#include "tayrem/rootfind.hpp"
#include "tayrem/spline.hpp"
#include "tayrem/table1.hpp"

using namespace tayrem;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int number, bool ok, const char* name, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", number, name,
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double fit_order_slope() {
    double exact = std::exp(5.0);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int n : {16, 32, 64, 128}) {
        GridSolution g = integrate([](double, double y) { return y; }, 0.0, 1.0, 5.0, n);
        double err = std::abs(g.values.back() - exact);
        if (err <= 0.0) continue;
        double lx = std::log2(static_cast<double>(n));
        double ly = std::log2(err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 3) return 0.0;
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace

int main() {
    DerivativeBundle ex1 = make_bundle(parse_expression("exp(x/5)*sin(x)"), 6, 1.0, 10.0);
    DerivativeBundle ex2 = make_bundle(parse_expression("ln(1+x)"), 6, 0.0, 10.0);

    // 1: seed roots of the oscillating example, 6 significant digits, < 1 s
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> roots1 = find_xi_z(ex1, 1.0, 1.0005, 1.0, 10.0, 20001);
    double dt = seconds_since(t0);
    bool ok = roots1.size() >= 2 && sig_match(roots1[0], 1.000167, 6) &&
              sig_match(roots1[1], 3.157781, 6) && dt < 1.0;
    verdict(1, ok, "seed roots, oscillating example",
            fmt("%.7g and %.7g vs 1.000167 / 3.157781, %.2f s", roots1[0],
                roots1.size() > 1 ? roots1[1] : 0.0, dt));

    // 2: seed root of the log example, 3 significant digits, < 1 s
    t0 = std::chrono::steady_clock::now();
    std::vector<double> roots2 = find_xi_z(ex2, 0.0, 0.0005, 0.0, 10.0, 20001);
    dt = seconds_since(t0);
    ok = !roots2.empty() && sig_match(roots2[0], 1.67e-4, 3) && dt < 1.0;
    verdict(2, ok, "seed root, log example",
            fmt("%.6g vs 1.67e-4, %.2f s", roots2.empty() ? 0.0 : roots2[0], dt));

    // 3: remainder defect <= 1e-10 on all three production trajectories, < 10 s
    t0 = std::chrono::steady_clock::now();
    LagrangeTrajectory b1 = solve_lagrange(ex1, 1.0, 1.0005, roots1[0], 10.0, 10000);
    LagrangeTrajectory b2 = solve_lagrange(ex1, 1.0, 1.0005, roots1[1], 10.0, 10000);
    LagrangeTrajectory b3 = solve_lagrange(ex2, 0.0, 0.0005, roots2[0], 10.0, 10000);
    double d1 = remainder_samples(b1, ex1, 1.0).max_abs_delta_r;
    double d2 = remainder_samples(b2, ex1, 1.0).max_abs_delta_r;
    double d3 = remainder_samples(b3, ex2, 0.0).max_abs_delta_r;
    dt = seconds_since(t0);
    ok = d1 <= 1e-10 && d2 <= 1e-10 && d3 <= 1e-10 && dt < 10.0;
    verdict(3, ok, "remainder defect on both examples",
            fmt("max|delta_r| %.2e / %.2e / %.2e vs 1e-10, %.1f s", d1, d2, d3, dt));

    // full pipeline runs feed criteria 4-7 and 9
    ExperimentResult run1 = run_experiment(example1_config());
    ExperimentResult run2 = run_experiment(example2_config());
    const MetricsRow& m1 = run1.report.metrics_row;
    const MetricsRow& m2 = run2.report.metrics_row;

    // 4: fifth-degree Taylor error inside the +-10% reference bands
    ok = m1.delta_t >= 5.2e2 && m1.delta_t <= 6.4e2 && m2.delta_t >= 1.6e4 &&
         m2.delta_t <= 2.0e4;
    verdict(4, ok, "delta_t bands",
            fmt("%.4g in [5.2e2, 6.4e2], %.4g in [1.6e4, 2.0e4]", m1.delta_t, m2.delta_t));

    // 5: enhanced-approximant error and its ratio to delta_t
    ok = m1.delta_cs <= 1e-10 && m2.delta_cs <= 1e-10 &&
         m1.delta_cs <= 1e-12 * m1.delta_t && m2.delta_cs <= 1e-12 * m2.delta_t;
    verdict(5, ok, "delta_cs and improvement ratio",
            fmt("delta_cs %.2e / %.2e, ratios %.1e / %.1e", m1.delta_cs, m2.delta_cs,
                m1.delta_cs / m1.delta_t, m2.delta_cs / m2.delta_t));

    // 6: spline error bound against the stored references, and error <= bound
    bool bu1_ok = sig_match(m1.b_u, 5.1e-10, 2);
    bool bu2_ok = sig_match(m2.b_u, 8.6e-9, 2) && sig_match(m2.b_u, 8.64e-9, 3);
    ok = bu1_ok && bu2_ok && m1.delta_cs <= m1.b_u && m2.delta_cs <= m2.b_u;
    verdict(6, ok, "spline error bound b_u",
            fmt("%.4g vs 5.1e-10 (2 s.f.), %.4g vs 8.6e-9 / 8.64e-9, errors below bound: %s/%s",
                m1.b_u, m2.b_u, m1.delta_cs <= m1.b_u ? "yes" : "no",
                m2.delta_cs <= m2.b_u ? "yes" : "no"));

    // 7: constraint story: crossings at 5.4 +- 0.1 and 2.8 +- 0.1, splice clean
    const auto& br = run1.report.branches;
    double cross1 = br.size() > 0 && !br[0].crossing_points.empty()
                        ? br[0].crossing_points.front()
                        : 0.0;
    double cross2 = br.size() > 1 && !br[1].crossing_points.empty()
                        ? br[1].crossing_points.front()
                        : 0.0;
    bool spliced_ok = run1.report.spliced && run1.report.spliced->constraint_ok;
    ok = std::abs(cross1 - 5.4) <= 0.1 && std::abs(cross2 - 2.8) <= 0.1 && spliced_ok;
    verdict(7, ok, "constraint crossings and splice",
            fmt("branch crossings %.3f / %.3f, spliced all-ok: %s", cross1, cross2,
                spliced_ok ? "yes" : "no"));

    // 8: oracle suite, < 30 s
    t0 = std::chrono::steady_clock::now();
    DerivativeBundle cubic = make_bundle(parse_expression("x^3"), 6, 0.0, 10.0);
    DerivativeBundle expb = make_bundle(parse_expression("exp(x)"), 6, 0.0, 10.0);

    double xi_z_c = find_xi_z(cubic, 0.0, 0.0005, 0.0, 1.0).front();
    LagrangeTrajectory tc = solve_lagrange(cubic, 0.0, 0.0005, xi_z_c, 9.0, 10000);
    double worst_a = 0.0;
    for (std::size_t i = 0; i < tc.grid.nodes.size(); ++i)
        worst_a = std::max(worst_a, std::abs(tc.grid.values[i] - tc.grid.nodes[i] / 3.0));

    double xi_z_e = find_xi_z(expb, 0.0, 0.0005, 0.0, 1.0).front();
    LagrangeTrajectory te = solve_lagrange(expb, 0.0, 0.0005, xi_z_e, 9.0, 10000);
    double worst_b = 0.0;
    for (std::size_t i = 0; i < te.grid.nodes.size(); ++i) {
        double x = te.grid.nodes[i];
        double exact = std::log(2.0 * (std::expm1(x) - x) / (x * x));
        worst_b = std::max(worst_b, std::abs(te.grid.values[i] - exact));
    }

    double slope = fit_order_slope();

    std::vector<double> lin_x, lin_y;
    for (int i = 0; i <= 6; ++i) {
        lin_x.push_back(1.5 * i);
        lin_y.push_back(3.0 * lin_x.back() - 2.0);
    }
    SplineModel lin = build_natural_spline(lin_x, lin_y);
    double worst_d = 0.0;
    for (int k = 0; k <= 90; ++k) {
        double x = 9.0 * k / 90.0;
        worst_d = std::max(worst_d, std::abs(eval_spline(lin, x) - (3.0 * x - 2.0)));
    }
    bool ends_d = std::abs(lin.c.front()) <= 1e-9 && std::abs(lin.c.back()) <= 1e-9;

    double r1_limit = find_xi_z(ex1, 1.0, 1.0 + 1e-5, 1.0, 10.0).front();
    double r2_limit = find_xi_z(ex2, 0.0, 1e-5, 0.0, 10.0).front();
    double ratio1 = 3.0 * (r1_limit - 1.0) / 1e-5 - 1.0;
    double ratio2 = 3.0 * r2_limit / 1e-5 - 1.0;
    dt = seconds_since(t0);

    ok = worst_a <= 1e-10 && worst_b <= 1e-9 && std::abs(slope + 7.0) <= 0.3 &&
         worst_d <= 1e-13 && ends_d && std::abs(ratio1) <= 0.01 &&
         std::abs(ratio2) <= 0.01 && dt < 30.0;
    verdict(8, ok, "oracle suite",
            fmt("cubic %.1e, exp %.1e, slope %.2f, spline %.1e, limit ratios %.4f/%.4f, %.1f s",
                worst_a, worst_b, slope, worst_d, ratio1, ratio2, dt));

    // 9: identical data files from two runs of the same configuration
    fs::path dir_a = fs::temp_directory_path() / "tayrem_accept_a";
    fs::path dir_b = fs::temp_directory_path() / "tayrem_accept_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    write_outputs(run1, dir_a);
    write_outputs(run_experiment(example1_config()), dir_b);
    int compared = 0;
    bool identical = true;
    for (const auto& entry : fs::directory_iterator(dir_a)) {
        fs::path name = entry.path().filename();
        std::string a = slurp(entry.path());
        std::string b = slurp(dir_b / name);
        if (name == "report.json") {
            // wall time lives in the trailing meta block; everything above it
            // must match exactly
            a = a.substr(0, a.find("\"meta\""));
            b = b.substr(0, b.find("\"meta\""));
        }
        identical = identical && !a.empty() && a == b;
        ++compared;
    }
    ok = identical && compared >= 5;
    verdict(9, ok, "deterministic outputs",
            fmt("%d files compared, %s", compared, identical ? "all identical" : "DIFFER"));

    if (failures > 0) {
        std::printf("%d of 9 criteria failed\n", failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
