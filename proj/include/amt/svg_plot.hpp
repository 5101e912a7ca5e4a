#pragma once

#include <string>
#include <vector>

#include "amt/errors.hpp"

namespace amt {

// One polyline of a plot.
struct PlotSeries {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> x;
    std::vector<double> y;
};

// Self-contained vector plot: no external renderer, deterministic output.
struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<PlotSeries> series;
    // Dashed vertical guide lines (drawn at these x positions, data units).
    std::vector<double> x_markers;
};

// Renders the plot as an SVG document string.
std::string render_line_plot(const PlotSpec& spec);

// Renders and writes to path (io_error on failure).
void save_line_plot(const PlotSpec& spec, const std::string& path);

}  // namespace amt
