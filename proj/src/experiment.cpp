#include "tayrem/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tayrem/errors.hpp"
#include "tayrem/report_io.hpp"
#include "tayrem/rootfind.hpp"
#include "tayrem/svg.hpp"

namespace tayrem {

namespace {

using ojson = nlohmann::ordered_json;

std::string strf(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double_field(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("invalid number for " + key + ": '" + text + "'");
    return v;
}

int parse_int_field(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0' || v < INT_MIN || v > INT_MAX)
        throw ConfigError("invalid integer for " + key + ": '" + text + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_list_field(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty entry in " + key);
        out.push_back(parse_double_field(key, item));
    }
    return out;
}

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    } catch (const std::exception& e) {
        throw Error(std::string(name) + " failed: " + e.what());
    }
}

BranchSummary summarize(const LagrangeTrajectory& traj, const RemainderSamples& samples) {
    BranchSummary s;
    s.label = traj.branch_label;
    s.xi_z = traj.xi_z;
    s.max_abs_delta_r = samples.max_abs_delta_r;
    s.constraint_ok = std::all_of(traj.constraint_flags.begin(), traj.constraint_flags.end(),
                                  [](bool ok) { return ok; });
    s.crossing_points = traj.crossing_points;
    return s;
}

std::string crossings_text(const std::vector<double>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size() && i < 4; ++i) {
        if (!out.empty()) out += ", ";
        out += strf("%.6g", pts[i]);
    }
    if (pts.size() > 4) out += ", ...";
    return out;
}

ojson config_to_json(const ExperimentConfig& c) {
    ojson j;
    j["label"] = c.label;
    j["function"] = c.function;
    j["lo"] = c.lo;
    j["hi"] = c.hi;
    j["x0"] = c.x0;
    j["xz_offset"] = c.xz_offset;
    j["n_steps"] = c.n_steps;
    j["scan_points"] = c.scan_points;
    j["probe_points"] = c.probe_points;
    j["max_branches"] = c.max_branches;
    j["seeds"] = c.seeds;
    j["switch_points"] = c.switch_points;
    j["mode"] = mode_to_string(c.mode);
    j["output_dir"] = c.output_dir;
    return j;
}

ExperimentConfig config_from_json(const ojson& j) {
    ExperimentConfig c;
    c.label = j.at("label").get<std::string>();
    c.function = j.at("function").get<std::string>();
    c.lo = j.at("lo").get<double>();
    c.hi = j.at("hi").get<double>();
    c.x0 = j.at("x0").get<double>();
    c.xz_offset = j.at("xz_offset").get<double>();
    c.n_steps = j.at("n_steps").get<int>();
    c.scan_points = j.at("scan_points").get<int>();
    c.probe_points = j.at("probe_points").get<int>();
    c.max_branches = j.at("max_branches").get<int>();
    c.seeds = j.at("seeds").get<std::vector<double>>();
    c.switch_points = j.at("switch_points").get<std::vector<double>>();
    c.mode = mode_from_string(j.at("mode").get<std::string>());
    c.output_dir = j.at("output_dir").get<std::string>();
    return c;
}

ojson summary_to_json(const BranchSummary& b) {
    ojson j;
    j["label"] = b.label;
    j["xi_z"] = b.xi_z;
    j["max_abs_delta_r"] = b.max_abs_delta_r;
    j["constraint_ok"] = b.constraint_ok;
    j["crossing_points"] = b.crossing_points;
    return j;
}

BranchSummary summary_from_json(const ojson& j) {
    BranchSummary b;
    b.label = j.at("label").get<std::string>();
    b.xi_z = j.at("xi_z").get<double>();
    b.max_abs_delta_r = j.at("max_abs_delta_r").get<double>();
    b.constraint_ok = j.at("constraint_ok").get<bool>();
    b.crossing_points = j.at("crossing_points").get<std::vector<double>>();
    return b;
}

ojson metrics_to_json(const MetricsRow& m) {
    ojson j;
    j["label"] = m.label;
    j["interval"] = {m.lo, m.hi};
    j["delta_t"] = m.delta_t;
    j["delta_cs"] = m.delta_cs;
    j["delta_cs_dense"] = m.delta_cs_dense;
    j["b_u"] = m.b_u;
    return j;
}

MetricsRow metrics_from_json(const ojson& j) {
    MetricsRow m;
    m.label = j.at("label").get<std::string>();
    m.lo = j.at("interval").at(0).get<double>();
    m.hi = j.at("interval").at(1).get<double>();
    m.delta_t = j.at("delta_t").get<double>();
    m.delta_cs = j.at("delta_cs").get<double>();
    m.delta_cs_dense = j.at("delta_cs_dense").get<double>();
    m.b_u = j.at("b_u").get<double>();
    return m;
}

ojson report_to_json(const ExperimentReport& r) {
    ojson j;
    j["config"] = config_to_json(r.config);
    j["x_z"] = r.x_z;
    j["roots"] = r.roots;
    j["branches"] = ojson::array();
    for (const auto& b : r.branches) j["branches"].push_back(summary_to_json(b));
    j["spliced"] = r.spliced ? summary_to_json(*r.spliced) : ojson(nullptr);
    j["metrics"] = metrics_to_json(r.metrics_row);
    j["near_x0_max_error"] = r.near_x0_max_error;
    j["warnings"] = r.warnings;
    j["meta"] = ojson{{"duration_seconds", r.duration_seconds}};
    return j;
}

ExperimentReport report_from_json(const ojson& j) {
    ExperimentReport r;
    r.config = config_from_json(j.at("config"));
    r.x_z = j.at("x_z").get<double>();
    r.roots = j.at("roots").get<std::vector<double>>();
    for (const auto& jb : j.at("branches")) r.branches.push_back(summary_from_json(jb));
    if (!j.at("spliced").is_null()) r.spliced = summary_from_json(j.at("spliced"));
    r.metrics_row = metrics_from_json(j.at("metrics"));
    r.near_x0_max_error = j.at("near_x0_max_error").get<double>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.duration_seconds = j.at("meta").at("duration_seconds").get<double>();
    return r;
}

std::string trajectory_csv(const LagrangeTrajectory& traj, const RemainderSamples& s) {
    std::string out = "x,xi,r_xi,r_act,delta_r,constraint_ok\n";
    for (std::size_t i = 0; i < traj.grid.nodes.size(); ++i) {
        out += format_full(traj.grid.nodes[i]);
        out += ',';
        out += format_full(traj.grid.values[i]);
        out += ',';
        out += format_full(s.r_xi[i]);
        out += ',';
        out += format_full(s.r_act[i]);
        out += ',';
        out += format_full(s.delta_r[i]);
        out += ',';
        out += traj.constraint_flags[i] ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (function.empty()) throw ConfigError("function must be set");
    if (label.empty()) throw ConfigError("label must not be empty");
    if (!(lo <= x0)) throw ConfigError("need lo <= x0");
    if (!(x0 < hi)) throw ConfigError("need x0 < hi");
    if (!(xz_offset > 0)) throw ConfigError("xz_offset must be positive");
    if (!(x0 + xz_offset < hi)) throw ConfigError("x0 + xz_offset must lie below hi");
    if (n_steps < 10) throw ConfigError("n_steps must be at least 10");
    if (scan_points < 100) throw ConfigError("scan_points must be at least 100");
    if (probe_points < 1000) throw ConfigError("probe_points must be at least 1000");
    if (max_branches < 1) throw ConfigError("max_branches must be at least 1");
    for (std::size_t i = 1; i < seeds.size(); ++i)
        if (!(seeds[i - 1] < seeds[i])) throw ConfigError("seeds must be strictly increasing");
    for (std::size_t i = 0; i < switch_points.size(); ++i) {
        double p = switch_points[i];
        if (!(p > x0 + xz_offset && p < hi))
            throw ConfigError(strf("switch point %.6g outside (x_z, hi)", p));
        if (i > 0 && !(switch_points[i - 1] < p))
            throw ConfigError("switch_points must be strictly increasing");
    }
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    ExperimentConfig cfg;
    cfg.label = path.stem().string();
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(strf("%s:%d: expected key = value", path.string().c_str(), lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(strf("%s:%d: missing key", path.string().c_str(), lineno));
        if (!seen.insert(key).second)
            throw ConfigError(strf("%s:%d: duplicate key '%s'", path.string().c_str(), lineno,
                                   key.c_str()));
        if (key == "label") cfg.label = val;
        else if (key == "function") cfg.function = val;
        else if (key == "lo") cfg.lo = parse_double_field(key, val);
        else if (key == "hi") cfg.hi = parse_double_field(key, val);
        else if (key == "x0") cfg.x0 = parse_double_field(key, val);
        else if (key == "xz_offset") cfg.xz_offset = parse_double_field(key, val);
        else if (key == "n_steps") cfg.n_steps = parse_int_field(key, val);
        else if (key == "scan_points") cfg.scan_points = parse_int_field(key, val);
        else if (key == "probe_points") cfg.probe_points = parse_int_field(key, val);
        else if (key == "max_branches") cfg.max_branches = parse_int_field(key, val);
        else if (key == "seeds") cfg.seeds = parse_list_field(key, val);
        else if (key == "switch_points") cfg.switch_points = parse_list_field(key, val);
        else if (key == "mode") cfg.mode = mode_from_string(val);
        else if (key == "output_dir") cfg.output_dir = val;
        else
            throw ConfigError(strf("%s:%d: unknown key '%s'", path.string().c_str(), lineno,
                                   key.c_str()));
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig example1_config() {
    ExperimentConfig c;
    c.label = "example1";
    c.function = "exp(x/5)*sin(x)";
    c.lo = 1.0;
    c.hi = 10.0;
    c.x0 = 1.0;
    c.switch_points = {4.0};
    c.output_dir = "out/example1";
    return c;
}

ExperimentConfig example2_config() {
    ExperimentConfig c;
    c.label = "example2";
    c.function = "ln(1+x)";
    c.lo = 0.0;
    c.hi = 10.0;
    c.x0 = 0.0;
    c.output_dir = "out/example2";
    return c;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    auto t_start = std::chrono::steady_clock::now();

    ExperimentResult res;
    res.report.config = cfg;
    const double x_z = cfg.x_z();
    res.report.x_z = x_z;

    DerivativeBundle bundle = stage("parse", [&] {
        return make_bundle(parse_expression(cfg.function), 6, cfg.lo, cfg.hi);
    });

    res.report.roots = cfg.seeds.empty()
                           ? stage("rootfind", [&] {
                                 return find_xi_z(bundle, cfg.x0, x_z, cfg.lo, cfg.hi,
                                                  cfg.scan_points);
                             })
                           : cfg.seeds;

    const std::size_t nb = std::min(res.report.roots.size(),
                                    static_cast<std::size_t>(cfg.max_branches));
    {
        std::vector<std::future<LagrangeTrajectory>> futures;
        futures.reserve(nb);
        for (std::size_t i = 0; i < nb; ++i) {
            double xi_z = res.report.roots[i];
            futures.push_back(std::async(std::launch::async, [&bundle, &cfg, x_z, xi_z] {
                return solve_lagrange(bundle, cfg.x0, x_z, xi_z, cfg.hi, cfg.n_steps);
            }));
        }
        for (auto& f : futures)
            res.trajectories.push_back(stage("trajectory", [&] { return f.get(); }));
    }
    for (const auto& traj : res.trajectories)
        res.samples.push_back(remainder_samples(traj, bundle, cfg.x0));

    if (!cfg.switch_points.empty()) {
        if (cfg.switch_points.size() + 1 != nb)
            throw ConfigError(strf("%zu switch points need %zu branches, have %zu",
                                   cfg.switch_points.size(), cfg.switch_points.size() + 1, nb));
        res.spliced = stage("splice", [&] {
            return splice(res.trajectories, cfg.switch_points);
        });
        res.spliced_samples = remainder_samples(*res.spliced, bundle, cfg.x0);
    }

    const LagrangeTrajectory& active = res.spliced ? *res.spliced : res.trajectories.front();
    TaylorPolynomial t1 = taylor_poly(bundle, cfg.x0, 1);
    TaylorPolynomial t5 = taylor_poly(bundle, cfg.x0, 5);
    EnhancedApproximant enhanced = stage("enhance", [&] {
        return build_enhanced(t1, active, bundle, cfg.mode);
    });
    res.report.metrics_row = stage("metrics", [&] {
        return metrics(bundle, enhanced, t5, cfg.lo, cfg.hi, cfg.probe_points, cfg.label);
    });

    double near = 0.0;
    for (int k = 0; k <= 100; ++k) {
        double x = cfg.x0 + k * (x_z - cfg.x0) / 101.0;
        near = std::max(near, std::abs(bundle.eval(0, x) - enhanced(x)));
    }
    res.report.near_x0_max_error = near;

    for (std::size_t i = 0; i < res.trajectories.size(); ++i)
        res.report.branches.push_back(summarize(res.trajectories[i], res.samples[i]));
    if (res.spliced) res.report.spliced = summarize(*res.spliced, *res.spliced_samples);

    auto& warnings = res.report.warnings;
    warnings.push_back(strf("xi data starts at x_z = %.17g; [x0, x_z) is covered by the "
                            "near-x0 rule",
                            x_z));
    if (res.report.roots.size() > nb)
        warnings.push_back(strf("%zu roots found, first %zu used as branches",
                                res.report.roots.size(), nb));
    for (const auto& b : res.report.branches)
        if (!b.constraint_ok)
            warnings.push_back(strf("branch %s leaves x0 < xi < x (crossings near %s)",
                                    b.label.c_str(), crossings_text(b.crossing_points).c_str()));
    if (res.spliced && !res.report.spliced->constraint_ok)
        warnings.push_back(strf("spliced trajectory leaves x0 < xi < x (crossings near %s)",
                                crossings_text(res.report.spliced->crossing_points).c_str()));
    if (!res.spliced && res.trajectories.size() > 1)
        warnings.push_back(strf("no switch_points given; metrics follow branch %s",
                                res.trajectories.front().branch_label.c_str()));

    res.report.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

void write_outputs(const ExperimentResult& res, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    for (std::size_t i = 0; i < res.trajectories.size(); ++i) {
        const auto& traj = res.trajectories[i];
        write_text_atomic(dir / ("trajectory_" + traj.branch_label + ".csv"),
                          trajectory_csv(traj, res.samples[i]));
    }
    if (res.spliced)
        write_text_atomic(dir / "trajectory_spliced.csv",
                          trajectory_csv(*res.spliced, *res.spliced_samples));

    write_text_atomic(dir / "report.json", report_to_json(res.report).dump(2) + "\n");

    const auto& cfg = res.report.config;
    std::vector<PlotSeries> xi_series;
    for (const auto& traj : res.trajectories)
        xi_series.push_back({"xi " + traj.branch_label, traj.grid.nodes, traj.grid.values});
    if (res.spliced)
        xi_series.push_back({"xi spliced", res.spliced->grid.nodes, res.spliced->grid.values});
    xi_series.push_back({"x0", {res.report.x_z, cfg.hi}, {cfg.x0, cfg.x0}});
    xi_series.push_back({"x", {res.report.x_z, cfg.hi}, {res.report.x_z, cfg.hi}});
    write_text_atomic(dir / "plot_xi.svg",
                      render_svg("Lagrange function, " + cfg.label, "x", "xi", xi_series));

    std::vector<PlotSeries> rem_series;
    rem_series.push_back({"r_act", res.samples.front().nodes, res.samples.front().r_act});
    for (std::size_t i = 0; i < res.trajectories.size(); ++i)
        rem_series.push_back({"r_xi " + res.trajectories[i].branch_label,
                              res.samples[i].nodes, res.samples[i].r_xi});
    if (res.spliced)
        rem_series.push_back({"r_xi spliced", res.spliced_samples->nodes,
                              res.spliced_samples->r_xi});
    write_text_atomic(dir / "plot_remainder.svg",
                      render_svg("Remainder terms, " + cfg.label, "x", "R", rem_series));

    std::vector<PlotSeries> dr_series;
    for (std::size_t i = 0; i < res.trajectories.size(); ++i)
        dr_series.push_back({"delta_r " + res.trajectories[i].branch_label,
                             res.samples[i].nodes, res.samples[i].delta_r});
    if (res.spliced)
        dr_series.push_back({"delta_r spliced", res.spliced_samples->nodes,
                             res.spliced_samples->delta_r});
    write_text_atomic(dir / "plot_delta_r.svg",
                      render_svg("Remainder defect, " + cfg.label, "x", "delta R", dr_series));
}

ExperimentReport load_report(const std::filesystem::path& json_path) {
    std::ifstream in(json_path);
    if (!in) throw Error("cannot open " + json_path.string());
    ojson j;
    try {
        in >> j;
        return report_from_json(j);
    } catch (const ojson::exception& e) {
        throw Error("malformed report " + json_path.string() + ": " + e.what());
    }
}

}  // namespace tayrem
