#pragma once
// Reference implementations the tests check the library against. They share
// no code with the library beyond the plain data types.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "acnav/lattice.hpp"

namespace oracle {

using acnav::CellCoord;
using acnav::Grid;
using acnav::Tessellation;

/// Bit k of the rule number read from its 8-digit binary expansion, where the
/// leftmost digit belongs to input 111.
inline int rule_bit(int rule, int x4, int x1, int x2) {
    std::string digits;
    for (int v = rule, k = 0; k < 8; ++k, v /= 2) digits.insert(digits.begin(), static_cast<char>('0' + v % 2));
    const int pattern = x4 * 4 + x1 * 2 + x2;
    return digits[static_cast<std::size_t>(7 - pattern)] - '0';
}

inline int manhattan(CellCoord a, CellCoord b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

/// Hex distance on odd-column-up offset storage via cube coordinates.
inline int hex_distance(CellCoord a, CellCoord b) {
    auto cube = [](CellCoord c) {
        const int x = c.x;
        const int z = c.y - (c.x - (c.x & 1)) / 2;
        return std::array<int, 3>{x, z, -x - z};
    };
    const auto ca = cube(a), cb = cube(b);
    return std::max({std::abs(ca[0] - cb[0]), std::abs(ca[1] - cb[1]), std::abs(ca[2] - cb[2])});
}

inline int distance(Tessellation t, CellCoord a, CellCoord b) {
    return t == Tessellation::Square ? oracle::manhattan(a, b) : oracle::hex_distance(a, b);
}

/// Neighbours in storage coordinates. Hex: flat-top, odd columns sit half a
/// row higher than even ones.
inline std::vector<CellCoord> neighbours(Tessellation t, CellCoord c) {
    if (t == Tessellation::Square) return {{c.x, c.y + 1}, {c.x + 1, c.y}, {c.x, c.y - 1}, {c.x - 1, c.y}};
    const bool odd = (c.x & 1) != 0;
    const int up = odd ? 1 : 0;    // row offset of the upper diagonal neighbours
    const int dn = odd ? 0 : -1;   // row offset of the lower diagonal neighbours
    return {{c.x, c.y + 1},      {c.x + 1, c.y + up}, {c.x + 1, c.y + dn},
            {c.x, c.y - 1},      {c.x - 1, c.y + dn}, {c.x - 1, c.y + up}};
}

/// Shortest path length over free cells, or nullopt when unreachable.
inline std::optional<int> bfs(const Grid& g, CellCoord from, CellCoord to) {
    const int w = g.width(), h = g.height();
    auto inside = [&](CellCoord c) { return c.x >= 0 && c.y >= 0 && c.x < w && c.y < h; };
    auto free = [&](CellCoord c) { return inside(c) && !g.at(c).is_obstacle(); };
    if (!free(from) || !free(to)) return std::nullopt;
    std::vector<int> dist(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), -1);
    auto at = [&](CellCoord c) -> int& { return dist[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c.x)]; };
    std::deque<CellCoord> q{from};
    at(from) = 0;
    while (!q.empty()) {
        const CellCoord c = q.front();
        q.pop_front();
        if (c == to) return at(c);
        for (const auto& n : neighbours(g.tessellation(), c)) {
            if (free(n) && at(n) < 0) {
                at(n) = at(c) + 1;
                q.push_back(n);
            }
        }
    }
    return std::nullopt;
}

inline bool adjacent(Tessellation t, CellCoord a, CellCoord b) {
    for (const auto& n : neighbours(t, a))
        if (n == b) return true;
    return false;
}

inline CellCoord random_cell(std::mt19937_64& rng, int w, int h) {
    return {std::uniform_int_distribution<int>(0, w - 1)(rng), std::uniform_int_distribution<int>(0, h - 1)(rng)};
}

/// Grid with each cell an obstacle with probability `density`, except `keep`.
inline Grid random_grid(std::mt19937_64& rng, Tessellation t, int w, int h, double density,
                        const std::vector<CellCoord>& keep = {}) {
    Grid g(t, w, h);
    std::bernoulli_distribution coin(density);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (coin(rng)) g.set({x, y}, acnav::CellState::obstacle());
    for (const auto& c : keep) g.set(c, acnav::CellState::free());
    return g;
}

/// Random walk of `moves` steps inside a w x h box, staying in bounds.
inline std::vector<CellCoord> random_walk(std::mt19937_64& rng, Tessellation t, int w, int h, int moves) {
    std::vector<CellCoord> path{random_cell(rng, w, h)};
    while (static_cast<int>(path.size()) <= moves) {
        auto ns = neighbours(t, path.back());
        std::erase_if(ns, [&](CellCoord c) { return c.x < 0 || c.y < 0 || c.x >= w || c.y >= h; });
        path.push_back(ns[std::uniform_int_distribution<std::size_t>(0, ns.size() - 1)(rng)]);
    }
    return path;
}

}  // namespace oracle

namespace acnav {
// readable parameter names in test listings
inline void PrintTo(Tessellation t, std::ostream* os) { *os << to_string(t); }
}  // namespace acnav
