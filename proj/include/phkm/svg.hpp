#pragma once

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phkm/persistence.hpp"

namespace phkm {

namespace detail {

inline const char* svg_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

inline void write_svg_file(const std::string& path, const std::string& body, int width,
                           int height) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace detail

/// Scatter plot of one or more persistence diagrams (one colour per diagram,
/// labelled by homological dimension) with the diagonal for reference.
inline void plot_diagrams_svg(const std::string& path,
                              const std::vector<PersistenceDiagram>& diagrams) {
    const int size = 480;
    const int margin = 40;
    const double span = size - 2.0 * margin;

    double hi = 0.0;
    for (const auto& d : diagrams)
        for (const auto& p : d.points) hi = std::max(hi, p.death);
    if (hi <= 0.0) hi = 1.0;
    hi *= 1.05;

    auto X = [&](double v) { return margin + span * (v / hi); };
    auto Y = [&](double v) { return size - margin - span * (v / hi); };

    std::ostringstream body;
    body << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(hi) << "\" y2=\""
         << Y(hi) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    body << "<line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << size - margin
         << "\" y2=\"" << size - margin << "\" stroke=\"black\"/>\n";
    body << "<line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << margin
         << "\" y2=\"" << margin << "\" stroke=\"black\"/>\n";

    for (std::size_t i = 0; i < diagrams.size(); ++i) {
        const char* color = detail::svg_color(i);
        for (const auto& p : diagrams[i].points)
            body << "<circle cx=\"" << X(p.birth) << "\" cy=\"" << Y(p.death)
                 << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.7\"/>\n";
        body << "<text x=\"" << margin + 8 << "\" y=\"" << margin + 16 * (i + 1)
             << "\" font-size=\"12\" fill=\"" << color << "\">H" << diagrams[i].dimension
             << " (" << diagrams[i].points.size() << " pts)</text>\n";
    }
    detail::write_svg_file(path, body.str(), size, size);
}

/// Polyline plot of one or more numeric series sharing an x-grid.  Used for
/// Betti curves, landscape levels and k-means cost traces.
inline void plot_series_svg(const std::string& path,
                            const std::vector<std::vector<double>>& series,
                            const std::vector<std::string>& names = {}) {
    if (series.empty()) throw std::invalid_argument("plot_series_svg: no series");
    for (const auto& s : series)
        if (s.size() < 2) throw std::invalid_argument("plot_series_svg: series too short");

    const int w = 640, h = 400, margin = 40;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t len = 0;
    for (const auto& s : series) {
        len = std::max(len, s.size());
        for (double v : s) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(hi > lo)) {
        hi = lo + 1.0;
        lo -= 1.0;
    }

    auto X = [&](std::size_t i, std::size_t n) {
        return margin + (w - 2.0 * margin) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    auto Y = [&](double v) { return h - margin - (h - 2.0 * margin) * (v - lo) / (hi - lo); };

    std::ostringstream body;
    body << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
         << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
    body << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << margin
         << "\" y2=\"" << margin << "\" stroke=\"black\"/>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        body << "<polyline fill=\"none\" stroke=\"" << detail::svg_color(s)
             << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].size(); ++i)
            body << X(i, series[s].size()) << ',' << Y(series[s][i]) << ' ';
        body << "\"/>\n";
        if (s < names.size())
            body << "<text x=\"" << margin + 8 << "\" y=\"" << margin + 16 * (s + 1)
                 << "\" font-size=\"12\" fill=\"" << detail::svg_color(s) << "\">" << names[s]
                 << "</text>\n";
    }
    detail::write_svg_file(path, body.str(), w, h);
}

}  // namespace phkm
