#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "tayrem/errors.hpp"
#include "tayrem/experiment.hpp"
#include "tayrem/figures.hpp"
#include "tayrem/selfcheck.hpp"
#include "tayrem/table1.hpp"

namespace {

void print_run_summary(const tayrem::ExperimentResult& res) {
    const auto& rep = res.report;
    std::printf("experiment %s: %s on [%g, %g], x0 = %g\n", rep.config.label.c_str(),
                rep.config.function.c_str(), rep.config.lo, rep.config.hi, rep.config.x0);
    std::printf("roots at x_z = %.10g:", rep.x_z);
    for (double r : rep.roots) std::printf(" %.10g", r);
    std::printf("\n");
    for (const auto& b : rep.branches)
        std::printf("branch %-16s xi_z %.10g  max|delta_r| %.3e  constraint %s\n",
                    b.label.c_str(), b.xi_z, b.max_abs_delta_r, b.constraint_ok ? "ok" : "violated");
    if (rep.spliced)
        std::printf("spliced                  max|delta_r| %.3e  constraint %s\n",
                    rep.spliced->max_abs_delta_r, rep.spliced->constraint_ok ? "ok" : "violated");
    const auto& m = rep.metrics_row;
    std::printf("delta_t %.4e  delta_cs %.4e (dense %.4e)  b_u %.4e\n", m.delta_t, m.delta_cs,
                m.delta_cs_dense, m.b_u);
    std::printf("near-x0 max error %.3e\n", rep.near_x0_max_error);
    for (const auto& w : rep.warnings) std::printf("note: %s\n", w.c_str());
    std::printf("outputs in %s (%.2fs)\n", rep.config.output_dir.c_str(), rep.duration_seconds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Taylor remainder reconstruction toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output_dir;
    int n_steps = 0;
    std::string mode;
    auto* dir_opt = app.add_option("--output-dir", output_dir, "override the output directory");
    auto* steps_opt = app.add_option("--n-steps", n_steps, "override the trajectory step count")
                          ->check(CLI::PositiveNumber);
    auto* mode_opt = app.add_option("--mode", mode, "remainder spline mode for run")
                         ->check(CLI::IsMember({"factored", "direct"}));

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run one experiment from a config file");
    run_cmd->add_option("config", config_path, "key=value config file")->required();

    auto* table_cmd = app.add_subcommand("table1", "run both worked examples and compare "
                                                   "against the stored reference values");
    int figure_number = 0;
    auto* figure_cmd = app.add_subcommand("figure", "write one figure as csv and svg");
    figure_cmd->add_option("number", figure_number, "figure number, 1-6")->required();
    auto* check_cmd = app.add_subcommand("selfcheck", "run the built-in closed-form checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            tayrem::ExperimentConfig cfg = tayrem::load_config(config_path);
            if (dir_opt->count()) cfg.output_dir = output_dir;
            if (steps_opt->count()) cfg.n_steps = n_steps;
            if (mode_opt->count()) cfg.mode = tayrem::mode_from_string(mode);
            cfg.validate();
            tayrem::ExperimentResult res = tayrem::run_experiment(cfg);
            tayrem::write_outputs(res, cfg.output_dir);
            print_run_summary(res);
            return 0;
        }
        if (table_cmd->parsed()) {
            auto rows = tayrem::compute_table1();
            std::fputs(tayrem::format_table1(rows).c_str(), stdout);
            std::string dir = dir_opt->count() ? output_dir : std::string("out");
            tayrem::write_table1_csv(rows, dir);
            std::printf("wrote %s/table1.csv\n", dir.c_str());
            for (const auto& row : rows)
                if (!row.delta_t_ok || !row.delta_cs_ok || !row.b_u_ok) return 1;
            return 0;
        }
        if (figure_cmd->parsed()) {
            tayrem::FigureData fig = tayrem::figure_data(figure_number);
            std::string dir = dir_opt->count() ? output_dir : std::string("out");
            tayrem::write_figure(fig, dir);
            std::printf("wrote %s/figure%d.csv and %s/figure%d.svg\n", dir.c_str(),
                        fig.number, dir.c_str(), fig.number);
            return 0;
        }
        if (check_cmd->parsed()) {
            auto results = tayrem::run_selfcheck();
            bool all_ok = true;
            for (const auto& r : results) {
                std::printf("[%s] %s: %s\n", r.passed ? " ok " : "fail", r.name.c_str(),
                            r.detail.c_str());
                all_ok = all_ok && r.passed;
            }
            return all_ok ? 0 : 1;
        }
    } catch (const tayrem::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
