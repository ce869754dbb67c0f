#include "tayrem/table1.hpp"

#include <cmath>
#include <cstdio>
#include <future>

#include "tayrem/experiment.hpp"
#include "tayrem/report_io.hpp"

namespace tayrem {

double round_sig(double v, int digits) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    double mag = std::pow(10.0, digits - 1 - std::floor(std::log10(std::abs(v))));
    return std::round(v * mag) / mag;
}

bool sig_match(double a, double b, int digits) {
    return round_sig(a, digits) == round_sig(b, digits);
}

namespace {

Table1Row make_row(MetricsRow computed, double dt_ref, double dt_lo, double dt_hi,
                   double dcs_ref, double bu_ref) {
    Table1Row row;
    row.computed = std::move(computed);
    row.delta_t_ref = dt_ref;
    row.delta_t_band_lo = dt_lo;
    row.delta_t_band_hi = dt_hi;
    row.delta_cs_ref = dcs_ref;
    row.b_u_ref = bu_ref;
    row.delta_t_ok = row.computed.delta_t >= dt_lo && row.computed.delta_t <= dt_hi;
    row.delta_cs_ok = row.computed.delta_cs <= 1e-10 &&
                      row.computed.delta_cs <= 1e-12 * row.computed.delta_t;
    row.b_u_ok = sig_match(row.computed.b_u, bu_ref, 2);
    return row;
}

}  // namespace

std::vector<Table1Row> compute_table1() {
    auto fut1 = std::async(std::launch::async,
                           [] { return run_experiment(example1_config()); });
    auto fut2 = std::async(std::launch::async,
                           [] { return run_experiment(example2_config()); });
    MetricsRow m1 = fut1.get().report.metrics_row;
    MetricsRow m2 = fut2.get().report.metrics_row;
    return {
        make_row(std::move(m1), 5.8e2, 5.2e2, 6.4e2, 5.4e-13, 5.1e-10),
        make_row(std::move(m2), 1.8e4, 1.6e4, 2.0e4, 1.4e-13, 8.6e-9),
    };
}

std::string format_table1(const std::vector<Table1Row>& rows) {
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf, "%-10s %-12s %11s %11s %11s   %-9s %-9s %-9s\n", "label",
                  "interval", "delta_t", "delta_cs", "b_u", "delta_t", "delta_cs", "b_u");
    out += buf;
    out += std::string(89, '-');
    out += '\n';
    for (const auto& row : rows) {
        const auto& m = row.computed;
        char interval[40];
        std::snprintf(interval, sizeof interval, "[%g, %g]", m.lo, m.hi);
        std::snprintf(buf, sizeof buf, "%-10s %-12s %11.4e %11.4e %11.4e   %-9s %-9s %-9s\n",
                      m.label.c_str(), interval, m.delta_t, m.delta_cs, m.b_u,
                      row.delta_t_ok ? "pass" : "FAIL", row.delta_cs_ok ? "pass" : "FAIL",
                      row.b_u_ok ? "pass" : "FAIL");
        out += buf;
    }
    out += '\n';
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf,
                      "%-10s reference: delta_t %.2g in [%.2g, %.2g], delta_cs ~%.2g, "
                      "b_u %.2g\n",
                      row.computed.label.c_str(), row.delta_t_ref, row.delta_t_band_lo,
                      row.delta_t_band_hi, row.delta_cs_ref, row.b_u_ref);
        out += buf;
    }
    return out;
}

void write_table1_csv(const std::vector<Table1Row>& rows, const std::filesystem::path& dir) {
    std::string csv =
        "label,lo,hi,delta_t,delta_cs,delta_cs_dense,b_u,"
        "delta_t_ref,delta_cs_ref,b_u_ref,delta_t_ok,delta_cs_ok,b_u_ok\n";
    for (const auto& row : rows) {
        const auto& m = row.computed;
        csv += m.label;
        for (double v : {m.lo, m.hi, m.delta_t, m.delta_cs, m.delta_cs_dense, m.b_u,
                         row.delta_t_ref, row.delta_cs_ref, row.b_u_ref}) {
            csv += ',';
            csv += format_full(v);
        }
        csv += row.delta_t_ok ? ",1" : ",0";
        csv += row.delta_cs_ok ? ",1" : ",0";
        csv += row.b_u_ok ? ",1" : ",0";
        csv += '\n';
    }
    write_text_atomic(dir / "table1.csv", csv);
}

}  // namespace tayrem
