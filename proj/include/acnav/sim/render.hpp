#pragma once
// Step-numbered renderings of a run. In ASCII, each visited cell shows the tick
// at which a robot entered it (modulo 10); starts and targets keep their map
// characters. With an empty trace the output is the map itself.

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "acnav/navigation.hpp"
#include "acnav/sim/map_file.hpp"

namespace acnav::sim {

enum class RenderStyle { Ascii, Svg, None };

inline RenderStyle parse_render_style(const std::string& s) {
    if (s == "ascii") return RenderStyle::Ascii;
    if (s == "svg") return RenderStyle::Svg;
    if (s == "none") return RenderStyle::None;
    throw Error("unknown render style '" + s + "'");
}

namespace detail {

struct Labels {
    std::map<CellCoord, std::int64_t> step;  // last tick a robot entered the cell
    std::map<CellCoord, char> marks;         // start / target characters
};

inline Labels collect_labels(const ParsedMap& map, const std::vector<StepTrace>& trace) {
    Labels l;
    for (const auto& t : trace) {
        for (auto c : {t.from, t.to})
            if (!map.grid.in_bounds(c)) throw Error("trace references out-of-bounds cell " + to_string(c));
        if (t.to != t.from) l.step[t.to] = t.tick;
    }
    for (const auto& r : map.robots) {
        const bool fleet = map.fleet_notation;
        l.marks[r.start] = fleet ? static_cast<char>('0' + r.id) : 'S';
        l.marks[r.target] = fleet ? static_cast<char>('a' + r.id) : 'F';
    }
    return l;
}

}  // namespace detail

inline std::string render_ascii(const ParsedMap& map, const std::vector<StepTrace>& trace) {
    const auto labels = detail::collect_labels(map, trace);
    const Grid& g = map.grid;
    std::string out;
    for (int y = g.height() - 1; y >= 0; --y) {
        for (int x = 0; x < g.width(); ++x) {
            const CellCoord c{x, y};
            char ch = g.at(c).is_obstacle() ? '#' : '.';
            if (auto it = labels.step.find(c); it != labels.step.end()) ch = static_cast<char>('0' + it->second % 10);
            if (auto it = labels.marks.find(c); it != labels.marks.end()) ch = it->second;
            out += ch;
        }
        out += '\n';
    }
    return out;
}

inline std::string render_svg(const ParsedMap& map, const std::vector<StepTrace>& trace) {
    constexpr double kCell = 20.0;
    const auto labels = detail::collect_labels(map, trace);
    const Grid& g = map.grid;
    const bool hex = g.tessellation() == Tessellation::Hex;
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);

    // Hex cells: flat-top with circumradius s; odd columns shifted up by half a row.
    const double s = kCell / std::sqrt(3.0);
    const double width = hex ? (1.5 * s * (g.width() - 1) + 2 * s) : kCell * g.width();
    const double height = hex ? (kCell * g.height() + kCell / 2) : kCell * g.height();
    auto centre = [&](CellCoord c) -> std::pair<double, double> {
        if (!hex) return {kCell * c.x + kCell / 2, kCell * (g.height() - 1 - c.y) + kCell / 2};
        const double cx = s + 1.5 * s * c.x;
        const double cy = kCell * (g.height() - 1 - c.y) + kCell / 2 + (c.x % 2 == 0 ? kCell / 2 : 0.0);
        return {cx, cy};
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    for (int y = g.height() - 1; y >= 0; --y) {
        for (int x = 0; x < g.width(); ++x) {
            const CellCoord c{x, y};
            const char* fill = g.at(c).is_obstacle() ? "#222222" : labels.step.count(c) ? "#cfe3ff" : "#ffffff";
            const auto [cx, cy] = centre(c);
            if (hex) {
                os << "  <polygon points=\"";
                for (int k = 0; k < 6; ++k) {
                    const double a = 3.14159265358979323846 / 3.0 * k;
                    os << (k ? " " : "") << cx + s * std::cos(a) << ',' << cy + s * std::sin(a);
                }
                os << "\" fill=\"" << fill << "\" stroke=\"#888888\"/>\n";
            } else {
                os << "  <rect x=\"" << cx - kCell / 2 << "\" y=\"" << cy - kCell / 2 << "\" width=\"" << kCell
                   << "\" height=\"" << kCell << "\" fill=\"" << fill << "\" stroke=\"#888888\"/>\n";
            }
            std::string text;
            if (auto it = labels.step.find(c); it != labels.step.end()) text = std::to_string(it->second);
            if (auto it = labels.marks.find(c); it != labels.marks.end()) text = std::string(1, it->second);
            if (!text.empty())
                os << "  <text x=\"" << cx << "\" y=\"" << cy + 4 << "\" font-size=\"10\" text-anchor=\"middle\">"
                   << text << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

inline std::string render(const ParsedMap& map, const std::vector<StepTrace>& trace, RenderStyle style) {
    switch (style) {
        case RenderStyle::Ascii: return render_ascii(map, trace);
        case RenderStyle::Svg: return render_svg(map, trace);
        case RenderStyle::None: return {};
    }
    return {};
}

}  // namespace acnav::sim
