#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tayrem {

struct FigureData {
    int number = 0;
    std::string title;
    std::vector<std::string> columns;  // first column is x
    std::vector<double> xs;
    std::vector<std::vector<double>> ys;  // one per column after x
};

// Figures 1-3 come from the exp(x/5)*sin(x) run, 4-6 from ln(1+x).
// Any other number is a ConfigError.
FigureData figure_data(int number);

// figure<n>.csv and figure<n>.svg in dir.
void write_figure(const FigureData& figure, const std::filesystem::path& dir);

}  // namespace tayrem
