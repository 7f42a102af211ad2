#pragma once
// Cell lattices for active-cell navigation: square and hexagonal tessellations,
// coordinates, occupancy, and direction-relative neighborhood extraction.
//
// Conventions
//   * +x is "right" (east), +y is "forward" (north).
//   * The world edge reads as an obstacle.
//   * Hex lattices are flat-top. Storage uses odd-column offset coordinates
//     (odd columns sit half a cell higher); geometry uses axial (q, r).
//
//       offset (col, row)  ->  axial q = col,  r = row - floor(col / 2)
//
//     Direction indices run clockwise from north:
//
//       index  name  axial offset
//         0    C1 N    ( 0, +1)
//         1    C2 NE   (+1,  0)
//         2    C3 SE   (+1, -1)
//         3    C4 S    ( 0, -1)
//         4    C5 SW   (-1,  0)
//         5    C6 NW   (-1, +1)

#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acnav {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Tessellation : std::uint8_t { Square, Hex };

inline const char* to_string(Tessellation t) { return t == Tessellation::Square ? "square" : "hex"; }

struct CellCoord {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(CellCoord, CellCoord) = default;
    friend constexpr auto operator<=>(CellCoord, CellCoord) = default;
};

inline std::string to_string(CellCoord c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

struct HexCoord {
    int q = 0;
    int r = 0;

    friend constexpr bool operator==(HexCoord, HexCoord) = default;
};

constexpr int floor_div2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

constexpr HexCoord offset_to_axial(CellCoord c) { return {c.x, c.y - floor_div2(c.x)}; }
constexpr CellCoord axial_to_offset(HexCoord h) { return {h.q, h.r + floor_div2(h.q)}; }

struct DeltaVector {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(DeltaVector, DeltaVector) = default;
    constexpr bool is_zero() const { return x == 0 && y == 0; }
};

constexpr DeltaVector delta_to(CellCoord from, CellCoord to) { return {to.x - from.x, to.y - from.y}; }

constexpr int manhattan(CellCoord a, CellCoord b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

constexpr int hex_distance(HexCoord a, HexCoord b) {
    const int dq = a.q - b.q;
    const int dr = a.r - b.r;
    return (std::abs(dq) + std::abs(dr) + std::abs(dq + dr)) / 2;
}

/// Lattice distance between two stored cells (Manhattan or axial hex distance).
constexpr int lattice_distance(Tessellation t, CellCoord a, CellCoord b) {
    return t == Tessellation::Square ? manhattan(a, b) : hex_distance(offset_to_axial(a), offset_to_axial(b));
}

// ---------------------------------------------------------------------------
// Directions

/// A lattice direction. Square: 0 Fwd, 1 Right, 2 Back, 3 Left. Hex: 0..5 for C1..C6.
/// Indices increase clockwise in both tessellations.
struct Direction {
    std::uint8_t index = 0;

    friend constexpr bool operator==(Direction, Direction) = default;
};

inline constexpr Direction kFwd{0};
inline constexpr Direction kRight{1};
inline constexpr Direction kBack{2};
inline constexpr Direction kLeft{3};

constexpr int direction_count(Tessellation t) { return t == Tessellation::Square ? 4 : 6; }

constexpr Direction rotate_cw(Direction d, Tessellation t, int steps = 1) {
    const int n = direction_count(t);
    return Direction{static_cast<std::uint8_t>(((d.index + steps) % n + n) % n)};
}

constexpr Direction opposite(Direction d, Tessellation t) { return rotate_cw(d, t, direction_count(t) / 2); }

/// Clockwise rotation steps from `from` to `to`, normalised to (-n/2, n/2].
constexpr int turn_steps(Direction from, Direction to, Tessellation t) {
    const int n = direction_count(t);
    int s = ((to.index - from.index) % n + n) % n;
    if (s > n / 2) s -= n;
    return s;
}

/// Hex direction from its 1-based C index.
constexpr Direction hex_dir(int j) {
    return Direction{static_cast<std::uint8_t>(((j - 1) % 6 + 6) % 6)};
}
constexpr int hex_index(Direction d) { return d.index + 1; }

inline std::string direction_name(Direction d, Tessellation t) {
    if (t == Tessellation::Square) {
        static constexpr std::array<const char*, 4> names{"fwd", "right", "back", "left"};
        return names[d.index % 4];
    }
    return "C" + std::to_string(hex_index(d));
}

inline constexpr std::array<HexCoord, 6> kHexAxialOffsets{{{0, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}}};
inline constexpr std::array<CellCoord, 4> kSquareOffsets{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

constexpr CellCoord step_in_direction(CellCoord c, Direction d, Tessellation t) {
    if (t == Tessellation::Square) {
        const CellCoord o = kSquareOffsets[d.index % 4];
        return {c.x + o.x, c.y + o.y};
    }
    const HexCoord h = offset_to_axial(c);
    const HexCoord o = kHexAxialOffsets[d.index % 6];
    return axial_to_offset({h.q + o.q, h.r + o.r});
}

/// Direction leading from `from` to the adjacent cell `to`, or -1 when not adjacent.
constexpr int direction_between(CellCoord from, CellCoord to, Tessellation t) {
    for (int i = 0; i < direction_count(t); ++i) {
        const Direction d{static_cast<std::uint8_t>(i)};
        if (step_in_direction(from, d, t) == to) return i;
    }
    return -1;
}

// ---------------------------------------------------------------------------
// Cell state

/// Free, Obstacle, or Active(robot id). Packed in one integer for dense storage.
class CellState {
public:
    constexpr CellState() = default;

    static constexpr CellState free() { return CellState{kFree}; }
    static constexpr CellState obstacle() { return CellState{kObstacle}; }
    static constexpr CellState active(int robot_id) { return CellState{robot_id + 1}; }

    constexpr bool is_free() const { return raw_ == kFree; }
    constexpr bool is_obstacle() const { return raw_ == kObstacle; }
    constexpr bool is_active() const { return raw_ > 0; }
    constexpr int robot_id() const { return raw_ - 1; }

    /// Logical occupancy bit: "1" for obstacles and active cells.
    constexpr bool occupied() const { return raw_ != kFree; }

    friend constexpr bool operator==(CellState, CellState) = default;
    friend constexpr auto operator<=>(CellState, CellState) = default;

private:
    static constexpr std::int32_t kFree = 0;
    static constexpr std::int32_t kObstacle = -1;
    constexpr explicit CellState(std::int32_t raw) : raw_(raw) {}
    std::int32_t raw_ = kFree;
};

// ---------------------------------------------------------------------------
// Grid

class Grid {
public:
    Grid() = default;

    Grid(Tessellation tess, int width, int height) : tess_(tess), width_(width), height_(height) {
        if (width < 1 || height < 1)
            throw Error("grid dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
        cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), CellState::free());
    }

    Tessellation tessellation() const { return tess_; }
    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return cells_.size(); }

    bool in_bounds(CellCoord c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }

    /// Out-of-bounds reads return Obstacle.
    CellState at(CellCoord c) const { return in_bounds(c) ? cells_[index(c)] : CellState::obstacle(); }

    void set(CellCoord c, CellState s) {
        if (!in_bounds(c)) throw Error("cell " + to_string(c) + " is outside the grid");
        cells_[index(c)] = s;
    }

    std::size_t index(CellCoord c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
    }

    std::size_t count_if(const std::function<bool(CellState)>& pred) const {
        std::size_t n = 0;
        for (const auto& s : cells_)
            if (pred(s)) ++n;
        return n;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Tessellation tess_ = Tessellation::Square;
    int width_ = 0;
    int height_ = 0;
    std::vector<CellState> cells_;
};

inline Grid new_grid(Tessellation tess, int width, int height, std::span<const CellCoord> obstacles = {}) {
    Grid g(tess, width, height);
    for (const auto& c : obstacles) {
        if (!g.in_bounds(c)) throw Error("obstacle coordinate " + to_string(c) + " is out of bounds");
        g.set(c, CellState::obstacle());
    }
    return g;
}

/// Counts grid reads made on behalf of one engine step.
struct ReadCounter {
    int reads = 0;

    CellState read(const Grid& g, CellCoord c) {
        ++reads;
        return g.at(c);
    }
};

// ---------------------------------------------------------------------------
// Neighborhoods

/// Square neighborhood of an active cell b0 in a rotated frame.
///
/// ring1 holds b1..b4 clockwise with b1 in the `frame` direction. ring2 holds
/// the straight-onward cells b1^1..b4^4 at [0..3] and the corner cells
/// b(1,2), b(2,3), b(3,4), b(4,1) at [4..7]. Each corner is shared by the two
/// ring-1 cells it touches.
struct NeighborhoodView {
    CellCoord origin{};
    Direction frame = kFwd;
    CellState center = CellState::free();
    std::array<CellState, 4> ring1{};
    std::array<CellState, 8> ring2{};

    /// b_i for i in 1..4.
    CellState b(int i) const { return ring1[static_cast<std::size_t>(wrap4(i) - 1)]; }
    /// b_i^i for i in 1..4.
    CellState onward(int i) const { return ring2[static_cast<std::size_t>(wrap4(i) - 1)]; }
    /// Corner between b_i and b_{i+1} for i in 1..4 (b(4,1) for i = 4).
    CellState corner(int i) const { return ring2[static_cast<std::size_t>(4 + wrap4(i) - 1)]; }

    /// Absolute direction of b_i.
    Direction direction_of(int i) const { return rotate_cw(frame, Tessellation::Square, wrap4(i) - 1); }

    static constexpr int wrap4(int i) { return ((i - 1) % 4 + 4) % 4 + 1; }
};

/// Absolute coordinates of the 13 cells a square view covers, in view order:
/// [0] b0, [1..4] ring1, [5..12] ring2.
inline std::array<CellCoord, 13> neighborhood_cells(CellCoord origin, Direction frame) {
    constexpr auto t = Tessellation::Square;
    std::array<CellCoord, 13> out{};
    out[0] = origin;
    for (int i = 0; i < 4; ++i) {
        const Direction d = rotate_cw(frame, t, i);
        const CellCoord bi = step_in_direction(origin, d, t);
        out[static_cast<std::size_t>(1 + i)] = bi;
        out[static_cast<std::size_t>(5 + i)] = step_in_direction(bi, d, t);
        out[static_cast<std::size_t>(9 + i)] = step_in_direction(bi, rotate_cw(d, t), t);
    }
    return out;
}

inline NeighborhoodView neighborhood(const Grid& grid, CellCoord origin, Direction frame, ReadCounter* counter = nullptr) {
    ReadCounter local;
    ReadCounter& rc = counter ? *counter : local;
    const auto cells = neighborhood_cells(origin, frame);
    NeighborhoodView v;
    v.origin = origin;
    v.frame = frame;
    v.center = rc.read(grid, cells[0]);
    for (std::size_t i = 0; i < 4; ++i) v.ring1[i] = rc.read(grid, cells[1 + i]);
    for (std::size_t i = 0; i < 8; ++i) v.ring2[i] = rc.read(grid, cells[5 + i]);
    return v;
}

/// States of C1..C6 (index 0..5) around a hex cell.
struct HexView {
    CellCoord origin{};
    CellState center = CellState::free();
    std::array<CellState, 6> ring{};

    /// C_j with wrap-around: C_0 is C_6 and C_7 is C_1.
    CellState c(int j) const { return ring[static_cast<std::size_t>(((j - 1) % 6 + 6) % 6)]; }
};

inline HexView hex_neighbors(const Grid& grid, CellCoord origin, ReadCounter* counter = nullptr) {
    ReadCounter local;
    ReadCounter& rc = counter ? *counter : local;
    HexView v;
    v.origin = origin;
    v.center = rc.read(grid, origin);
    for (int i = 0; i < 6; ++i)
        v.ring[static_cast<std::size_t>(i)] =
            rc.read(grid, step_in_direction(origin, Direction{static_cast<std::uint8_t>(i)}, Tessellation::Hex));
    return v;
}

/// Predecessor / successor of a 1-based hex index with wrap-around.
constexpr int hex_pred(int j) { return j == 1 ? 6 : j - 1; }
constexpr int hex_succ(int j) { return j == 6 ? 1 : j + 1; }

}  // namespace acnav

template <>
struct std::hash<acnav::CellCoord> {
    std::size_t operator()(acnav::CellCoord c) const noexcept {
        return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
                                          static_cast<std::uint32_t>(c.y));
    }
};
