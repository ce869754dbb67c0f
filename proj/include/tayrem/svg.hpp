#pragma once

#include <string>
#include <vector>

namespace tayrem {

struct PlotSeries {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

// Minimal line plot. Series longer than ~2000 points are thinned by stride.
std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<PlotSeries>& series,
                       int width = 960, int height = 600);

}  // namespace tayrem
