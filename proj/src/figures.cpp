#include "tayrem/figures.hpp"

#include <string>

#include "tayrem/errors.hpp"
#include "tayrem/experiment.hpp"
#include "tayrem/report_io.hpp"
#include "tayrem/svg.hpp"

namespace tayrem {

namespace {

std::vector<double> constant_line(std::size_t n, double v) {
    return std::vector<double>(n, v);
}

FigureData example1_figure(int number) {
    ExperimentResult res = run_experiment(example1_config());
    if (res.trajectories.size() < 2)
        throw Error("figure needs two branches, run produced " +
                    std::to_string(res.trajectories.size()));
    const auto& xs = res.trajectories[0].grid.nodes;
    FigureData fig;
    fig.number = number;
    fig.xs = xs;
    switch (number) {
        case 1:
            fig.title = "xi(x) for exp(x/5)*sin(x), both branches";
            fig.columns = {"x", "xi_branch1", "xi_branch2", "x0_line", "identity_line"};
            fig.ys = {res.trajectories[0].grid.values, res.trajectories[1].grid.values,
                      constant_line(xs.size(), res.trajectories[0].x0), xs};
            break;
        case 2:
            fig.title = "R_act and R_xi for exp(x/5)*sin(x)";
            fig.columns = {"x", "r_act", "r_xi_branch1", "r_xi_branch2"};
            fig.ys = {res.samples[0].r_act, res.samples[0].r_xi, res.samples[1].r_xi};
            break;
        default:
            fig.title = "delta R for exp(x/5)*sin(x)";
            fig.columns = {"x", "delta_r_branch1", "delta_r_branch2"};
            fig.ys = {res.samples[0].delta_r, res.samples[1].delta_r};
            break;
    }
    return fig;
}

FigureData example2_figure(int number) {
    ExperimentResult res = run_experiment(example2_config());
    const auto& xs = res.trajectories[0].grid.nodes;
    FigureData fig;
    fig.number = number;
    fig.xs = xs;
    switch (number) {
        case 4:
            fig.title = "xi(x) for ln(1+x)";
            fig.columns = {"x", "xi", "x0_line", "identity_line"};
            fig.ys = {res.trajectories[0].grid.values,
                      constant_line(xs.size(), res.trajectories[0].x0), xs};
            break;
        case 5:
            fig.title = "R_act and R_xi for ln(1+x)";
            fig.columns = {"x", "r_act", "r_xi"};
            fig.ys = {res.samples[0].r_act, res.samples[0].r_xi};
            break;
        default:
            fig.title = "delta R for ln(1+x)";
            fig.columns = {"x", "delta_r"};
            fig.ys = {res.samples[0].delta_r};
            break;
    }
    return fig;
}

}  // namespace

FigureData figure_data(int number) {
    if (number < 1 || number > 6)
        throw ConfigError("figure number must be between 1 and 6, got " +
                          std::to_string(number));
    return number <= 3 ? example1_figure(number) : example2_figure(number);
}

void write_figure(const FigureData& figure, const std::filesystem::path& dir) {
    std::string csv;
    for (std::size_t c = 0; c < figure.columns.size(); ++c) {
        if (c) csv += ',';
        csv += figure.columns[c];
    }
    csv += '\n';
    for (std::size_t i = 0; i < figure.xs.size(); ++i) {
        csv += format_full(figure.xs[i]);
        for (const auto& col : figure.ys) {
            csv += ',';
            csv += format_full(col[i]);
        }
        csv += '\n';
    }
    std::string stem = "figure" + std::to_string(figure.number);
    write_text_atomic(dir / (stem + ".csv"), csv);

    std::vector<PlotSeries> series;
    for (std::size_t c = 0; c < figure.ys.size(); ++c)
        series.push_back({figure.columns[c + 1], figure.xs, figure.ys[c]});
    write_text_atomic(dir / (stem + ".svg"),
                      render_svg(figure.title, figure.columns[0], "value", series));
}

}  // namespace tayrem
