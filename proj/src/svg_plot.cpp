#include "amt/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace amt {

namespace {

constexpr double kWidth = 840.0, kHeight = 560.0;
constexpr double kLeft = 88.0, kRight = 32.0, kTop = 56.0, kBottom = 72.0;

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_line_plot(const PlotSpec& spec) {
    if (spec.series.empty()) throw argument_error("render_line_plot: no series to draw");

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
    for (const auto& s : spec.series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw argument_error("render_line_plot: series '" + s.label +
                                 "' has mismatched or empty data");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double xv = s.x[i];
            if (spec.log_x && !(xv > 0.0))
                throw domain_error("render_line_plot: log x axis requires x > 0");
            x_min = std::min(x_min, xv);
            x_max = std::max(x_max, xv);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    }
    if (y_max == y_min) {
        y_max += 1.0;
        y_min -= 1.0;
    }
    // A little headroom keeps curves off the frame.
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const auto xt = [&](double v) { return spec.log_x ? std::log10(v) : v; };
    const double tx_min = xt(x_min), tx_max = xt(x_max);
    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double v) {
        return tx_max > tx_min ? kLeft + (xt(v) - tx_min) / (tx_max - tx_min) * plot_w
                               : kLeft + 0.5 * plot_w;
    };
    const auto py = [&](double v) { return kTop + (y_max - v) / (y_max - y_min) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
           "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
           fmt(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"30\" font-family=\"sans-serif\" "
           "font-size=\"18\" text-anchor=\"middle\">" + escape(spec.title) + "</text>\n";

    // Frame
    svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) +
           "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"#333\"/>\n";

    // Ticks: 6 in the (possibly log-transformed) x coordinate, 6 in y.
    const int n_ticks = 6;
    for (int i = 0; i < n_ticks; ++i) {
        const double f = static_cast<double>(i) / (n_ticks - 1);
        const double txv = tx_min + f * (tx_max - tx_min);
        const double xv = spec.log_x ? std::pow(10.0, txv) : txv;
        const double xp = kLeft + f * plot_w;
        svg += "<line x1=\"" + fmt(xp) + "\" y1=\"" + fmt(kTop + plot_h) + "\" x2=\"" + fmt(xp) +
               "\" y2=\"" + fmt(kTop + plot_h + 6) + "\" stroke=\"#333\"/>\n";
        svg += "<text x=\"" + fmt(xp) + "\" y=\"" + fmt(kTop + plot_h + 24) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
               fmt(xv, "%.3g") + "</text>\n";

        const double yv = y_min + f * (y_max - y_min);
        const double yp = py(yv);
        svg += "<line x1=\"" + fmt(kLeft - 6) + "\" y1=\"" + fmt(yp) + "\" x2=\"" + fmt(kLeft) +
               "\" y2=\"" + fmt(yp) + "\" stroke=\"#333\"/>\n";
        svg += "<text x=\"" + fmt(kLeft - 10) + "\" y=\"" + fmt(yp + 4) +
               "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">" +
               fmt(yv, "%.3g") + "</text>\n";
    }
    svg += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 16) +
           "\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">" +
           escape(spec.x_label) + "</text>\n";
    svg += "<text x=\"24\" y=\"" + fmt(kTop + plot_h / 2) +
           "\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 24 " + fmt(kTop + plot_h / 2) + ")\">" +
           escape(spec.y_label) + "</text>\n";

    for (double m : spec.x_markers) {
        if (m < x_min || m > x_max) continue;
        svg += "<line x1=\"" + fmt(px(m)) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(px(m)) +
               "\" y2=\"" + fmt(kTop + plot_h) +
               "\" stroke=\"#666\" stroke-dasharray=\"6 4\"/>\n";
        svg += "<text x=\"" + fmt(px(m) + 6) + "\" y=\"" + fmt(kTop + 16) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#666\">" +
               fmt(m, "%.3g") + "</text>\n";
    }

    for (const auto& s : spec.series) {
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) pts += ' ';
            pts += fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
        }
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"2\"/>\n";
    }

    // Legend, top-left inside the frame.
    double ly = kTop + 14.0;
    for (const auto& s : spec.series) {
        svg += "<line x1=\"" + fmt(kLeft + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
               fmt(kLeft + 40) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt(kLeft + 46) + "\" y=\"" + fmt(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"13\">" + escape(s.label) +
               "</text>\n";
        ly += 18.0;
    }

    svg += "</svg>\n";
    return svg;
}

void save_line_plot(const PlotSpec& spec, const std::string& path) {
    const std::string svg = render_line_plot(spec);
    std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw io_error("cannot create directory " + p.parent_path().string() + ": " +
                               ec.message());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << svg;
    out.flush();
    if (!out) throw io_error("write failed for " + path);
}

}  // namespace amt
