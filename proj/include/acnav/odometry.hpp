#pragma once
// Wheel-revolution dead reckoning. A trajectory is stored as a sequence M of
// turn records (x, y, z, l): the cell where the robot turns, the signed turn
// angle there, and the wheel revolutions travelled since the previous record.
// The last record of a finished path carries z = 0.
//
// Turn angles are positive clockwise (to the right).

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "acnav/lattice.hpp"

namespace acnav {

struct WheelModel {
    double wheel_perimeter = 1.0;  // meters
    double cell_pitch = 1.0;       // meters per cell transit

    double revolutions_per_cell() const { return cell_pitch / wheel_perimeter; }

    void validate() const {
        if (!(wheel_perimeter > 0.0)) throw Error("wheel perimeter must be positive");
        if (!(cell_pitch > 0.0)) throw Error("cell pitch must be positive");
    }
};

inline double revolutions_for_distance(double meters, const WheelModel& model) {
    if (meters < 0.0) throw Error("distance must be non-negative, got " + std::to_string(meters));
    model.validate();
    return meters / model.wheel_perimeter;
}

/// Vertical cells still to cover after reaching the closest turn: y1 - (y_turn - y0).
constexpr int remaining_vertical_distance(int y1, int y_turn, int y0) { return y1 - (y_turn - y0); }

struct TurnRecord {
    int x = 0;
    int y = 0;
    int z = 0;         // degrees, clockwise positive; 0 marks the end of a path
    double l = 0.0;    // revolutions since the previous record

    friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

inline bool valid_turn_code(int z, Tessellation t) {
    if (z == 0) return true;
    if (t == Tessellation::Square) return z == 90 || z == -90;
    return z == 60 || z == -60 || z == 120 || z == -120 || z == 180;
}

/// Turn codes for a heading change. A square reversal is two consecutive +90 turns.
inline std::vector<int> turn_codes(Direction from, Direction to, Tessellation t) {
    const int steps = turn_steps(from, to, t);
    if (steps == 0) return {};
    if (t == Tessellation::Square) {
        if (steps == 2) return {90, 90};
        return {steps * 90};
    }
    return {steps * 60};
}

struct TrajectoryMemory {
    Tessellation tessellation = Tessellation::Square;
    Direction start_heading = kFwd;
    std::vector<TurnRecord> records;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }

    double total_revolutions() const {
        double s = 0.0;
        for (const auto& r : records) s += r.l;
        return s;
    }

    friend bool operator==(const TrajectoryMemory&, const TrajectoryMemory&) = default;
};

inline TrajectoryMemory& record_turn(TrajectoryMemory& memory, int x, int y, int z, double l) {
    if (!valid_turn_code(z, memory.tessellation))
        throw Error("turn code " + std::to_string(z) + " is not valid on a " + to_string(memory.tessellation) +
                    " lattice");
    if (!(l >= 0.0)) throw Error("revolutions since the previous turn must be non-negative");
    memory.records.push_back({x, y, z, l});
    return memory;
}

/// Collapses a cell path into turn records. Without an explicit start heading the
/// robot is taken to face its first move.
inline TrajectoryMemory compile_path_to_memory(std::span<const CellCoord> path, const WheelModel& model,
                                               Tessellation tess = Tessellation::Square,
                                               std::optional<Direction> start_heading = std::nullopt) {
    model.validate();
    TrajectoryMemory m;
    m.tessellation = tess;
    if (path.size() < 2) {
        m.start_heading = start_heading.value_or(kFwd);
        return m;
    }

    std::vector<Direction> moves;
    moves.reserve(path.size() - 1);
    for (std::size_t i = 1; i < path.size(); ++i) {
        const int d = direction_between(path[i - 1], path[i], tess);
        if (d < 0)
            throw Error("path cells " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not adjacent");
        moves.push_back(Direction{static_cast<std::uint8_t>(d)});
    }

    m.start_heading = start_heading.value_or(moves.front());
    const double rpc = model.revolutions_per_cell();
    Direction heading = m.start_heading;
    int run = 0;
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (moves[i] != heading) {
            double l = run * rpc;
            for (int z : turn_codes(heading, moves[i], tess)) {
                record_turn(m, path[i].x, path[i].y, z, l);
                l = 0.0;
            }
            heading = moves[i];
            run = 0;
        }
        ++run;
    }
    record_turn(m, path.back().x, path.back().y, 0, run * rpc);
    return m;
}

/// Continuous pose in meters; heading stays on the lattice directions.
struct Pose {
    double x = 0.0;
    double y = 0.0;
    Direction heading = kFwd;
};

namespace detail {
inline constexpr double kSqrt3 = 1.7320508075688772;

/// Unit vector of a lattice direction.
inline std::pair<double, double> heading_vector(Direction d, Tessellation t) {
    if (t == Tessellation::Square) {
        const auto o = kSquareOffsets[d.index % 4];
        return {static_cast<double>(o.x), static_cast<double>(o.y)};
    }
    const auto o = kHexAxialOffsets[d.index % 6];
    // flat-top axial -> cartesian with unit centre spacing
    return {1.5 * o.q / kSqrt3, o.r + o.q / 2.0};
}
}  // namespace detail

inline Pose cell_pose(CellCoord c, Direction heading, Tessellation t, const WheelModel& model) {
    if (t == Tessellation::Square) return {c.x * model.cell_pitch, c.y * model.cell_pitch, heading};
    const HexCoord h = offset_to_axial(c);
    return {1.5 * h.q / detail::kSqrt3 * model.cell_pitch, (h.r + h.q / 2.0) * model.cell_pitch, heading};
}

/// Nearest lattice cell to a continuous pose.
inline CellCoord snap_to_cell(const Pose& p, Tessellation t, const WheelModel& model) {
    if (t == Tessellation::Square)
        return {static_cast<int>(std::lround(p.x / model.cell_pitch)),
                static_cast<int>(std::lround(p.y / model.cell_pitch))};
    const double fq = p.x / model.cell_pitch * detail::kSqrt3 / 1.5;
    const double fr = p.y / model.cell_pitch - fq / 2.0;
    const double fs = -fq - fr;
    double q = std::round(fq), r = std::round(fr), s = std::round(fs);
    const double dq = std::abs(q - fq), dr = std::abs(r - fr), ds = std::abs(s - fs);
    if (dq > dr && dq > ds) q = -r - s;
    else if (dr > ds) r = -q - s;
    return axial_to_offset({static_cast<int>(q), static_cast<int>(r)});
}

/// Aggregated per-revolution scale error. Each revolution travels
/// perimeter * (1 + e) with e uniform in [-per_rev_scale_error, +per_rev_scale_error].
struct ErrorModel {
    double per_rev_scale_error = 0.0;
    std::uint64_t seed = 0;
    double confidence_band = 0.0;  // permissible final position error, cells
};

struct ReplayResult {
    Pose final_pose;
    std::vector<Pose> poses;  // start pose followed by the pose after each record
};

/// Dead-reckons through M: for each record, travel l revolutions along the
/// current heading, then turn by z.
inline ReplayResult replay(const TrajectoryMemory& memory, const Pose& start, const WheelModel& model,
                           const ErrorModel& error = {}) {
    model.validate();
    std::mt19937_64 rng(error.seed);
    std::uniform_real_distribution<double> scale(-error.per_rev_scale_error, error.per_rev_scale_error);
    const bool noisy = error.per_rev_scale_error > 0.0;
    const int degrees_per_step = memory.tessellation == Tessellation::Square ? 90 : 60;

    ReplayResult out;
    Pose pose = start;
    out.poses.push_back(pose);
    for (const auto& rec : memory.records) {
        double meters = rec.l * model.wheel_perimeter;
        if (noisy) {
            const double whole = std::floor(rec.l);
            meters = 0.0;
            for (double k = 0; k < whole; k += 1.0) meters += model.wheel_perimeter * (1.0 + scale(rng));
            const double frac = rec.l - whole;
            if (frac > 0.0) meters += frac * model.wheel_perimeter * (1.0 + scale(rng));
        }
        const auto [ux, uy] = detail::heading_vector(pose.heading, memory.tessellation);
        pose.x += ux * meters;
        pose.y += uy * meters;
        pose.heading = rotate_cw(pose.heading, memory.tessellation, rec.z / degrees_per_step);
        out.poses.push_back(pose);
    }
    out.final_pose = pose;
    return out;
}

inline std::string memory_to_csv(const TrajectoryMemory& memory) {
    std::ostringstream os;
    os << "x,y,z_degrees,l_revolutions\n";
    os << std::fixed << std::setprecision(6);
    for (const auto& r : memory.records) os << r.x << ',' << r.y << ',' << r.z << ',' << r.l << '\n';
    return os.str();
}

inline TrajectoryMemory memory_from_csv(const std::string& text, Tessellation tess, Direction start_heading = kFwd) {
    TrajectoryMemory m;
    m.tessellation = tess;
    m.start_heading = start_heading;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (lineno == 1) {
            if (line != "x,y,z_degrees,l_revolutions") throw Error("trajectory CSV: unexpected header");
            continue;
        }
        if (line.empty()) continue;
        std::istringstream ls(line);
        TurnRecord r;
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(ls >> r.x >> c1 >> r.y >> c2 >> r.z >> c3 >> r.l) || c1 != ',' || c2 != ',' || c3 != ',')
            throw Error("trajectory CSV: malformed record on line " + std::to_string(lineno));
        record_turn(m, r.x, r.y, r.z, r.l);
    }
    return m;
}

/// Per-robot distance record kept while the engine moves the robot.
class Odometer {
public:
    Odometer() = default;
    Odometer(WheelModel model, Tessellation tess, Direction start_heading) : model_(model) {
        model_.validate();
        memory_.tessellation = tess;
        memory_.start_heading = start_heading;
    }

    const WheelModel& model() const { return model_; }
    /// Cumulative wheel revolutions; never decreases.
    double revolutions() const { return static_cast<double>(cells_) * model_.revolutions_per_cell(); }
    const TrajectoryMemory& memory() const { return memory_; }

    /// Turns at `cell` from `from` to `to`, recording the distance covered since the last record.
    void turn(CellCoord cell, Direction from, Direction to) {
        for (int z : turn_codes(from, to, memory_.tessellation)) {
            record_turn(memory_, cell.x, cell.y, z, since_turn_ * model_.revolutions_per_cell());
            since_turn_ = 0;
        }
    }

    void advance_cell() {
        ++cells_;
        ++since_turn_;
    }

    /// Terminal record at the final cell.
    void finish(CellCoord cell) {
        if (cells_ == 0) return;
        record_turn(memory_, cell.x, cell.y, 0, since_turn_ * model_.revolutions_per_cell());
        since_turn_ = 0;
    }

private:
    WheelModel model_;
    std::int64_t cells_ = 0;
    std::int64_t since_turn_ = 0;
    TrajectoryMemory memory_;
};

}  // namespace acnav
