#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tayrem/enhance.hpp"
#include "tayrem/lagrange.hpp"

namespace tayrem {

struct ExperimentConfig {
    std::string label = "experiment";
    std::string function;
    double lo = 0.0;
    double hi = 0.0;
    double x0 = 0.0;
    double xz_offset = 0.0005;
    int n_steps = 10000;
    int scan_points = 20001;
    int probe_points = 100001;
    int max_branches = 2;
    std::vector<double> seeds;          // xi_z values; skips the root scan when set
    std::vector<double> switch_points;  // branch handover locations for the splice
    Mode mode = Mode::factored;
    std::string output_dir = "out";

    double x_z() const { return x0 + xz_offset; }
    void validate() const;  // throws ConfigError
};

// Flat key=value file, '#' starts a comment. Unknown or repeated keys are
// errors; label defaults to the file stem. The result is validated.
ExperimentConfig load_config(const std::filesystem::path& path);

ExperimentConfig example1_config();  // exp(x/5)*sin(x) on [1, 10]
ExperimentConfig example2_config();  // ln(1+x) on [0, 10]

struct BranchSummary {
    std::string label;
    double xi_z = 0.0;
    double max_abs_delta_r = 0.0;
    bool constraint_ok = false;  // every node satisfies x0 < xi < x
    std::vector<double> crossing_points;
};

struct ExperimentReport {
    ExperimentConfig config;
    double x_z = 0.0;
    std::vector<double> roots;
    std::vector<BranchSummary> branches;
    std::optional<BranchSummary> spliced;
    MetricsRow metrics_row;
    double near_x0_max_error = 0.0;
    std::vector<std::string> warnings;
    double duration_seconds = 0.0;
};

struct ExperimentResult {
    ExperimentReport report;
    std::vector<LagrangeTrajectory> trajectories;
    std::vector<RemainderSamples> samples;
    std::optional<LagrangeTrajectory> spliced;
    std::optional<RemainderSamples> spliced_samples;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// trajectory_<branch>.csv per branch (plus trajectory_spliced.csv when a
// splice exists), report.json, and three SVG plots, written atomically.
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

ExperimentReport load_report(const std::filesystem::path& json_path);

}  // namespace tayrem
