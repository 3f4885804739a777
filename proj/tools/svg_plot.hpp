#pragma once

#include <string>
#include <vector>

namespace sympca::cli {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Panel {
    std::string title;
    std::vector<Series> series;
};

// Minimal two-panel line plot with a logarithmic y axis, written as a single
// standalone SVG file. Zero or negative values are clamped to the axis floor.
void write_log_plot_svg(const std::string& path, const std::string& title,
                        const Panel& left, const Panel& right);

} // namespace sympca::cli
