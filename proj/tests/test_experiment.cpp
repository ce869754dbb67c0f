#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tayrem/errors.hpp"
#include "tayrem/experiment.hpp"

using namespace tayrem;
namespace fs = std::filesystem;

namespace {

fs::path temp_root() {
    fs::path p = fs::temp_directory_path() / "tayrem_test";
    fs::create_directories(p);
    return p;
}

fs::path write_temp_config(const std::string& name, const std::string& body) {
    fs::path p = temp_root() / name;
    std::ofstream out(p, std::ios::trunc);
    out << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig lite_example2() {
    ExperimentConfig cfg = example2_config();
    cfg.n_steps = 2000;
    cfg.probe_points = 20001;
    return cfg;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(TAYREM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("bundled config files mirror the built-in examples") {
    ExperimentConfig c1 = load_config(fs::path(TAYREM_REPO_DIR) / "configs/example1.cfg");
    ExperimentConfig r1 = example1_config();
    CHECK(c1.label == r1.label);
    CHECK(c1.function == r1.function);
    CHECK(c1.lo == r1.lo);
    CHECK(c1.hi == r1.hi);
    CHECK(c1.x0 == r1.x0);
    CHECK(c1.xz_offset == r1.xz_offset);
    CHECK(c1.n_steps == r1.n_steps);
    CHECK(c1.switch_points == r1.switch_points);
    CHECK(c1.mode == r1.mode);
    CHECK(c1.output_dir == r1.output_dir);

    ExperimentConfig c2 = load_config(fs::path(TAYREM_REPO_DIR) / "configs/example2.cfg");
    ExperimentConfig r2 = example2_config();
    CHECK(c2.function == r2.function);
    CHECK(c2.x0 == r2.x0);
    CHECK(c2.switch_points.empty());
}

TEST_CASE("config parser flags malformed input") {
    CHECK_THROWS_AS(load_config(temp_root() / "missing.cfg"), ConfigError);
    CHECK_THROWS_AS(
        load_config(write_temp_config("unknown.cfg",
                                      "function = x^3\nlo=0\nhi=9\nx0=0\nwat = 1\n")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_temp_config("dup.cfg",
                                      "function = x^3\nlo=0\nlo=1\nhi=9\nx0=0\n")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_temp_config("noeq.cfg", "function = x^3\nlo 0\nhi=9\nx0=0\n")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_temp_config("badnum.cfg",
                                      "function = x^3\nlo=zero\nhi=9\nx0=0\n")),
        ConfigError);
    CHECK_THROWS_AS(
        load_config(write_temp_config("nofunc.cfg", "lo=0\nhi=9\nx0=0\n")), ConfigError);
}

TEST_CASE("config invariants are enforced") {
    ExperimentConfig cfg = example2_config();
    cfg.x0 = -1.0;  // below lo
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = example2_config();
    cfg.xz_offset = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = example2_config();
    cfg.n_steps = 5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = example2_config();
    cfg.switch_points = {11.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = example1_config();
    cfg.x0 = 10.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("a full run produces a coherent report") {
    ExperimentResult res = run_experiment(lite_example2());
    const ExperimentReport& rep = res.report;
    CHECK(rep.x_z == 0.0005);
    REQUIRE(!rep.roots.empty());
    CHECK(rep.roots.front() == doctest::Approx(0.0005 / 3.0).epsilon(1e-3));
    REQUIRE(rep.branches.size() == 1);
    CHECK(rep.branches[0].constraint_ok);
    // a fifth of the production step count costs ~5^7 in trajectory accuracy
    CHECK(rep.branches[0].max_abs_delta_r <= 1e-6);
    CHECK(!rep.spliced.has_value());
    CHECK(rep.metrics_row.delta_t >= 1.6e4);
    CHECK(rep.metrics_row.delta_t <= 2.0e4);
    CHECK(rep.metrics_row.delta_cs <= 1e-6);
    CHECK(rep.near_x0_max_error <= 1e-9);
    CHECK(rep.duration_seconds > 0.0);
    CHECK(!rep.warnings.empty());
    REQUIRE(res.trajectories.size() == 1);
    CHECK(res.trajectories[0].grid.nodes.size() == 2001);
}

TEST_CASE("switch points demand a matching branch count") {
    ExperimentConfig cfg = lite_example2();
    cfg.switch_points = {4.0};  // only one root exists for ln(1+x)
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("written outputs are byte-stable across runs") {
    fs::path dir_a = temp_root() / "det_a";
    fs::path dir_b = temp_root() / "det_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    ExperimentConfig cfg = lite_example2();
    write_outputs(run_experiment(cfg), dir_a);
    write_outputs(run_experiment(cfg), dir_b);

    int csv_count = 0;
    for (const auto& entry : fs::directory_iterator(dir_a)) {
        if (entry.path().extension() != ".csv") continue;
        ++csv_count;
        CHECK(slurp(entry.path()) == slurp(dir_b / entry.path().filename()));
    }
    CHECK(csv_count >= 1);

    // report.json differs only in the timing block
    std::string ra = slurp(dir_a / "report.json");
    std::string rb = slurp(dir_b / "report.json");
    auto strip_meta = [](std::string s) {
        std::size_t at = s.find("\"meta\"");
        REQUIRE(at != std::string::npos);
        return s.substr(0, at);
    };
    CHECK(strip_meta(ra) == strip_meta(rb));
}

TEST_CASE("report survives a json round trip") {
    fs::path dir = temp_root() / "roundtrip";
    fs::remove_all(dir);
    ExperimentResult res = run_experiment(lite_example2());
    write_outputs(res, dir);
    ExperimentReport back = load_report(dir / "report.json");
    CHECK(back.x_z == res.report.x_z);
    CHECK(back.roots == res.report.roots);
    CHECK(back.metrics_row.delta_t == res.report.metrics_row.delta_t);
    CHECK(back.metrics_row.b_u == res.report.metrics_row.b_u);
    CHECK(back.config.function == res.report.config.function);
    CHECK(back.warnings == res.report.warnings);
    REQUIRE(back.branches.size() == res.report.branches.size());
    CHECK(back.branches[0].xi_z == res.report.branches[0].xi_z);
    CHECK(back.duration_seconds == res.report.duration_seconds);
}

TEST_CASE("command line exit codes") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("run /nonexistent/zzz.cfg") == 2);
    CHECK(run_cli("figure 9") == 2);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("selfcheck") == 0);

    fs::path cfg = write_temp_config(
        "cli_lite.cfg",
        "function = ln(1+x)\nlo=0\nhi=10\nx0=0\nn_steps=2000\nprobe_points=20001\n"
        "output_dir = " + (temp_root() / "cli_out").string() + "\n");
    CHECK(run_cli("run " + cfg.string()) == 0);
    CHECK(fs::exists(temp_root() / "cli_out" / "report.json"));
}
