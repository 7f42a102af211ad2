#pragma once
// Text map format.
//
//   .  free          #  obstacle
//   S  start         F  target          (single robot, id 0)
//   0-9 starts       a-j targets        (fleet; robot k goes to letter 'a' + k)
//   %  at column 1 starts a comment line
//
// Lines run top to bottom, so the first map row is the highest y. Hex maps use
// the same layout read as odd-column offset coordinates.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "acnav/fleet.hpp"
#include "acnav/lattice.hpp"

namespace acnav::sim {

class MapError : public Error {
public:
    MapError(int line, int column, const std::string& what)
        : Error(format(line, column, what)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(int line, int column, const std::string& what) {
        std::string out = "map line " + std::to_string(line);
        if (column > 0) out += ", column " + std::to_string(column);
        return out + ": " + what;
    }
    int line_;
    int column_;
};

struct ParsedMap {
    Grid grid;  // obstacles only; robots are not placed
    std::vector<FleetWorld::Spec> robots;
    bool fleet_notation = false;
};

namespace detail {
struct Mark {
    CellCoord cell;
    int line;
    int column;
};
}  // namespace detail

inline ParsedMap parse_map(const std::string& text, Tessellation tess = Tessellation::Square) {
    std::vector<std::string> rows;
    std::vector<int> row_lines;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '%') continue;
        rows.push_back(line);
        row_lines.push_back(lineno);
    }
    while (!rows.empty() && rows.back().empty()) {
        rows.pop_back();
        row_lines.pop_back();
    }
    if (rows.empty()) throw MapError(lineno, 0, "map has no rows");
    const std::size_t width = rows.front().size();
    if (width == 0) throw MapError(row_lines.front(), 0, "map row is empty");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != width)
            throw MapError(row_lines[i], 0,
                           "row has " + std::to_string(rows[i].size()) + " cells, expected " + std::to_string(width));
    }

    const int w = static_cast<int>(width);
    const int h = static_cast<int>(rows.size());
    ParsedMap out;
    out.grid = Grid(tess, w, h);
    std::map<int, detail::Mark> starts, targets;
    bool single = false;
    for (int i = 0; i < h; ++i) {
        for (int x = 0; x < w; ++x) {
            const char ch = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
            const CellCoord c{x, h - 1 - i};
            const detail::Mark mark{c, row_lines[static_cast<std::size_t>(i)], x + 1};
            auto put = [&](std::map<int, detail::Mark>& into, int id, const std::string& what) {
                if (!into.emplace(id, mark).second) throw MapError(mark.line, mark.column, "duplicate " + what);
            };
            if (ch == '.') continue;
            const bool single_mark = ch == 'S' || ch == 'F';
            const bool fleet_mark = (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'j');
            if ((single_mark && out.fleet_notation) || (fleet_mark && single))
                throw MapError(mark.line, mark.column, "map mixes 'S'/'F' with fleet digits and letters");
            if (ch == '#') {
                out.grid.set(c, CellState::obstacle());
            } else if (ch == 'S') {
                single = true;
                put(starts, 0, "start 'S'");
            } else if (ch == 'F') {
                single = true;
                put(targets, 0, "target 'F'");
            } else if (ch >= '0' && ch <= '9') {
                out.fleet_notation = true;
                put(starts, ch - '0', std::string("start '") + ch + "'");
            } else if (ch >= 'a' && ch <= 'j') {
                out.fleet_notation = true;
                put(targets, ch - 'a', std::string("target '") + ch + "'");
            } else {
                throw MapError(mark.line, mark.column, std::string("unknown map character '") + ch + "'");
            }
        }
    }
    for (const auto& [id, m] : starts) {
        if (!targets.count(id)) {
            const std::string want = single ? "'F'" : std::string("'") + static_cast<char>('a' + id) + "'";
            throw MapError(m.line, m.column, "start has no matching target " + want);
        }
    }
    for (const auto& [id, m] : targets) {
        if (!starts.count(id)) {
            const std::string want = single ? "'S'" : std::string("'") + static_cast<char>('0' + id) + "'";
            throw MapError(m.line, m.column, "target has no matching start " + want);
        }
    }
    for (const auto& [id, m] : starts) out.robots.push_back({id, m.cell, targets.at(id).cell});
    return out;
}

}  // namespace acnav::sim
