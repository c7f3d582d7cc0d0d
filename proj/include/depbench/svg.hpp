#pragma once

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "depbench/power.hpp"
#include "depbench/scenarios.hpp"

namespace depbench {

namespace detail {

inline std::string svg_coord(double v) {
    char buf[48];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
    return std::string(buf, r.ptr);
}

inline std::string svg_tick_label(double v) {
    char buf[48];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    std::string s(buf, r.ptr);
    // trim trailing zeros, keep at least one digit after the point
    while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
    return s;
}

inline const char* measure_color(MeasureId m) {
    switch (m) {
        case MeasureId::Cor: return "#377eb8";
        case MeasureId::Dcor: return "#4daf4a";
        case MeasureId::Mic: return "#e41a1c";
    }
    return "#000000";
}

}  // namespace detail

// One panel per scenario, power against noise level, one colored series per
// measure. Everything is inline SVG: no fonts, scripts, or images fetched
// from anywhere.
inline void write_svg(const std::vector<PowerResult>& results, std::ostream& os) {
    if (results.empty()) throw std::invalid_argument("write_svg: no results");

    std::vector<Scenario> scenarios;
    std::vector<MeasureId> measures;
    double smin = results.front().sigma, smax = results.front().sigma;
    for (const PowerResult& r : results) {
        if (std::find(scenarios.begin(), scenarios.end(), r.scenario) == scenarios.end())
            scenarios.push_back(r.scenario);
        if (std::find(measures.begin(), measures.end(), r.measure) == measures.end())
            measures.push_back(r.measure);
        smin = std::min(smin, r.sigma);
        smax = std::max(smax, r.sigma);
    }
    std::sort(scenarios.begin(), scenarios.end());
    std::sort(measures.begin(), measures.end());

    // points per (scenario, measure), in sigma order
    std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> series;
    for (const PowerResult& r : results)
        series[{static_cast<int>(r.scenario), static_cast<int>(r.measure)}].emplace_back(r.sigma,
                                                                                         r.power);
    for (auto& [key, pts] : series) std::sort(pts.begin(), pts.end());

    constexpr int kPadL = 46, kPadR = 14, kPadT = 30, kPadB = 38;
    constexpr int kPlotW = 240, kPlotH = 180;
    constexpr int kCellW = kPadL + kPlotW + kPadR;
    constexpr int kCellH = kPadT + kPlotH + kPadB;
    constexpr int kLegendH = 34;
    const int cols = std::min<int>(4, static_cast<int>(scenarios.size()));
    const int rows = (static_cast<int>(scenarios.size()) + cols - 1) / cols;
    const int width = cols * kCellW + 20;
    const int height = rows * kCellH + kLegendH + 20;

    const double sspan = smax - smin;
    auto px = [&](double sigma) {
        const double t = sspan > 0.0 ? (sigma - smin) / sspan : 0.5;
        return kPadL + t * kPlotW;
    };
    auto py = [&](double power) { return kPadT + (1.0 - power) * kPlotH; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";

    // legend
    {
        int lx = 24;
        const int ly = 18;
        os << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
        for (MeasureId m : measures) {
            os << "  <line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 26 << "\" y2=\""
               << ly << "\" stroke=\"" << detail::measure_color(m) << "\" stroke-width=\"2.5\"/>\n";
            os << "  <text x=\"" << lx + 32 << "\" y=\"" << ly + 4 << "\">" << measure_name(m)
               << "</text>\n";
            lx += 32 + 14 * static_cast<int>(measure_name(m).size()) + 18;
        }
        os << "</g>\n";
    }

    for (std::size_t si = 0; si < scenarios.size(); ++si) {
        const Scenario sc = scenarios[si];
        const int gx = 10 + static_cast<int>(si % cols) * kCellW;
        const int gy = kLegendH + 10 + static_cast<int>(si / cols) * kCellH;
        os << "<g transform=\"translate(" << gx << ',' << gy << ")\" font-family=\"sans-serif\">\n";
        os << "  <text x=\"" << kPadL + kPlotW / 2 << "\" y=\"" << kPadT - 10
           << "\" text-anchor=\"middle\" font-size=\"14\">" << scenario_name(sc) << "</text>\n";
        os << "  <rect x=\"" << kPadL << "\" y=\"" << kPadT << "\" width=\"" << kPlotW
           << "\" height=\"" << kPlotH << "\" fill=\"none\" stroke=\"#555555\"/>\n";

        for (double tick : {0.0, 0.5, 1.0}) {
            const double ty = py(tick);
            os << "  <line x1=\"" << kPadL - 4 << "\" y1=\"" << detail::svg_coord(ty) << "\" x2=\""
               << kPadL << "\" y2=\"" << detail::svg_coord(ty) << "\" stroke=\"#555555\"/>\n";
            os << "  <text x=\"" << kPadL - 8 << "\" y=\"" << detail::svg_coord(ty + 4)
               << "\" text-anchor=\"end\" font-size=\"11\">" << detail::svg_tick_label(tick)
               << "</text>\n";
        }
        const int xticks = sspan > 0.0 ? 4 : 1;
        for (int t = 0; t < xticks; ++t) {
            const double sigma = xticks == 1 ? smin : smin + sspan * t / (xticks - 1);
            const double tx = px(sigma);
            os << "  <line x1=\"" << detail::svg_coord(tx) << "\" y1=\"" << kPadT + kPlotH
               << "\" x2=\"" << detail::svg_coord(tx) << "\" y2=\"" << kPadT + kPlotH + 4
               << "\" stroke=\"#555555\"/>\n";
            os << "  <text x=\"" << detail::svg_coord(tx) << "\" y=\"" << kPadT + kPlotH + 16
               << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::svg_tick_label(sigma)
               << "</text>\n";
        }
        os << "  <text x=\"" << kPadL + kPlotW / 2 << "\" y=\"" << kPadT + kPlotH + 32
           << "\" text-anchor=\"middle\" font-size=\"12\">noise sigma</text>\n";
        os << "  <text transform=\"translate(" << kPadL - 34 << ',' << kPadT + kPlotH / 2
           << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">power</text>\n";

        for (MeasureId m : measures) {
            const auto it = series.find({static_cast<int>(sc), static_cast<int>(m)});
            if (it == series.end()) continue;
            const auto& pts = it->second;
            os << "  <g class=\"series measure-" << measure_name(m) << "\" stroke=\""
               << detail::measure_color(m) << "\" fill=\"none\">\n";
            os << "    <polyline stroke-width=\"1.8\" points=\"";
            bool head = true;
            for (const auto& [sigma, power] : pts) {
                if (!head) os << ' ';
                head = false;
                os << detail::svg_coord(px(sigma)) << ',' << detail::svg_coord(py(power));
            }
            os << "\"/>\n";
            os << "    <g fill=\"" << detail::measure_color(m) << "\" stroke=\"none\">\n";
            for (const auto& [sigma, power] : pts)
                os << "      <circle cx=\"" << detail::svg_coord(px(sigma)) << "\" cy=\""
                   << detail::svg_coord(py(power)) << "\" r=\"2.2\"/>\n";
            os << "    </g>\n  </g>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
}

inline void emit_plots(const std::vector<PowerResult>& results, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_plots: cannot open " + path.string());
    write_svg(results, os);
    os.flush();
    if (!os) throw std::runtime_error("emit_plots: write failed for " + path.string());
}

}  // namespace depbench
