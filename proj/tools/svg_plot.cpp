#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sympca::cli {

namespace {

constexpr double kFloor = 1e-18;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Box {
    double x0, y0, width, height;
};

std::string format_decade(int exponent) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "1e%d", exponent);
    return buffer;
}

void render_panel(std::ofstream& out, const Panel& panel, const Box& box) {
    double x_max = 1.0;
    int log_min = 0;
    int log_max = -400;
    for (const Series& s : panel.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x_max = std::max(x_max, s.x[i]);
            const double v = std::max(s.y[i], kFloor);
            log_min = std::min(log_min, static_cast<int>(std::floor(std::log10(v))));
            log_max = std::max(log_max, static_cast<int>(std::ceil(std::log10(v))));
        }
    }
    if (log_max <= log_min) {
        log_max = log_min + 1;
    }

    const auto x_pos = [&](double x) { return box.x0 + box.width * (x / x_max); };
    const auto y_pos = [&](double y) {
        const double lg = std::log10(std::max(y, kFloor));
        return box.y0 + box.height * (1.0 - (lg - log_min) / (log_max - log_min));
    };

    out << "<rect x='" << box.x0 << "' y='" << box.y0 << "' width='" << box.width
        << "' height='" << box.height << "' fill='none' stroke='#333'/>\n";
    out << "<text x='" << box.x0 + box.width / 2 << "' y='" << box.y0 - 8
        << "' text-anchor='middle' font-size='14'>" << panel.title << "</text>\n";

    const int decades = log_max - log_min;
    const int stride = decades > 12 ? (decades + 11) / 12 : 1;
    for (int e = log_min; e <= log_max; e += stride) {
        const double y = y_pos(std::pow(10.0, e));
        out << "<line x1='" << box.x0 << "' y1='" << y << "' x2='" << box.x0 + box.width
            << "' y2='" << y << "' stroke='#ddd'/>\n";
        out << "<text x='" << box.x0 - 6 << "' y='" << y + 4
            << "' text-anchor='end' font-size='10'>" << format_decade(e) << "</text>\n";
    }
    for (int k = 0; k <= 4; ++k) {
        const double x = box.x0 + box.width * k / 4.0;
        out << "<text x='" << x << "' y='" << box.y0 + box.height + 16
            << "' text-anchor='middle' font-size='10'>"
            << static_cast<long>(x_max * k / 4.0) << "</text>\n";
    }

    for (std::size_t si = 0; si < panel.series.size(); ++si) {
        const Series& s = panel.series[si];
        out << "<polyline fill='none' stroke='" << kPalette[si % 8]
            << "' stroke-width='1.2' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            char buffer[64];
            std::snprintf(buffer, sizeof(buffer), "%.1f,%.1f ", x_pos(s.x[i]),
                          y_pos(s.y[i]));
            out << buffer;
        }
        out << "'/>\n";
        const double ly = box.y0 + 14.0 + 14.0 * static_cast<double>(si);
        const double lx = box.x0 + box.width - 110.0;
        out << "<line x1='" << lx << "' y1='" << ly - 4 << "' x2='" << lx + 18 << "' y2='"
            << ly - 4 << "' stroke='" << kPalette[si % 8] << "' stroke-width='2'/>\n";
        out << "<text x='" << lx + 24 << "' y='" << ly << "' font-size='10'>" << s.label
            << "</text>\n";
    }
}

} // namespace

void write_log_plot_svg(const std::string& path, const std::string& title,
                        const Panel& left, const Panel& right) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='1180' height='480' "
           "font-family='sans-serif'>\n";
    out << "<text x='590' y='22' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    render_panel(out, left, Box{60.0, 50.0, 480.0, 380.0});
    render_panel(out, right, Box{650.0, 50.0, 480.0, 380.0});
    out << "</svg>\n";
}

} // namespace sympca::cli
