#pragma once
// Active-cell navigation engine.
//
// The robot's cell is the single active cell of the automaton. Each tick the
// active cell picks a preferred direction from the remaining coordinate
// difference, frames its neighborhood on that direction, and scans the
// von Neumann cells clockwise. A candidate cell is eligible when it is free and
// at least one of its two lookahead cells (straight on, and the corner on the
// target side) is free. The receiving cell then applies the configured
// elementary rule (136 or 172) to its own neighbors and accepts on "0".
//
// A step reads only the 13-cell neighborhood (7 cells on a hex lattice).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "acnav/ca_rules.hpp"
#include "acnav/control_fsm.hpp"
#include "acnav/lattice.hpp"
#include "acnav/odometry.hpp"

namespace acnav {

enum class RobotStatus : std::uint8_t { Idle, Moving, Arrived, Deadlocked };

inline const char* to_string(RobotStatus s) {
    switch (s) {
        case RobotStatus::Idle: return "idle";
        case RobotStatus::Moving: return "moving";
        case RobotStatus::Arrived: return "arrived";
        case RobotStatus::Deadlocked: return "deadlocked";
    }
    return "?";
}

namespace detail {

struct VisitKey {
    CellCoord cell;
    std::uint8_t heading;
    DeltaVector delta;

    friend bool operator==(const VisitKey&, const VisitKey&) = default;
};

struct VisitKeyHash {
    std::size_t operator()(const VisitKey& k) const noexcept {
        std::size_t h = std::hash<CellCoord>{}(k.cell);
        h ^= std::hash<CellCoord>{}({k.delta.x, k.delta.y}) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h ^ k.heading;
    }
};

}  // namespace detail

/// What a robot knows of the world in sensor-scan mode. Unsensed cells read Free.
struct KnownMap {
    Grid grid;
    std::vector<std::uint8_t> sensed;

    explicit KnownMap(const Grid& truth)
        : grid(truth.tessellation(), truth.width(), truth.height()), sensed(truth.size(), 0) {}

    bool is_sensed(CellCoord c) const { return grid.in_bounds(c) && sensed[grid.index(c)] != 0; }
    std::size_t sensed_count() const { return static_cast<std::size_t>(std::count(sensed.begin(), sensed.end(), 1)); }
};

struct RobotAgent {
    int id = 0;
    CellCoord cell{};
    Direction heading = kFwd;
    CellCoord target{};
    DeltaVector delta{};
    RobotStatus status = RobotStatus::Idle;
    Odometer odometer;
    fsm::ControlState control = fsm::ControlState::Calm;
    std::optional<CellCoord> previous;
    std::unordered_map<detail::VisitKey, int, detail::VisitKeyHash> visit_counts;
    std::optional<KnownMap> known;

    RobotAgent() = default;
    RobotAgent(int robot_id, CellCoord start, CellCoord goal, Tessellation tess = Tessellation::Square,
               WheelModel wheel = {})
        : id(robot_id), cell(start), target(goal), delta(delta_to(start, goal)), odometer(wheel, tess, kFwd) {}

    void retarget(CellCoord goal) {
        target = goal;
        delta = delta_to(cell, goal);
        visit_counts.clear();
        previous.reset();
        if (status == RobotStatus::Arrived || status == RobotStatus::Deadlocked) status = RobotStatus::Moving;
    }
};

struct EngineConfig {
    RuleNumber rule = kRule136;
    /// Occurrences of one (cell, heading, delta) triple that declare a livelock.
    int recurrence_limit = 3;
};

/// One record per robot per tick.
struct StepTrace {
    std::int64_t tick = 0;
    int robot = 0;
    CellCoord from{};
    CellCoord to{};
    std::optional<Direction> direction;  // empty when the robot did not move
    int examined = 0;                    // candidate cells considered
    int rule = 0;                        // rule evaluated by the receiving cell, 0 if none
    RobotStatus status = RobotStatus::Idle;
    int cells_read = 0;                  // instrumentation, not serialised

    friend bool operator==(const StepTrace&, const StepTrace&) = default;
};

// ---------------------------------------------------------------------------
// Direction choice

namespace detail {

/// Nearest hex axis (1-based) to an axial difference; ties go to the lower index.
inline int nearest_hex_axis(HexCoord d) {
    int best = 1;
    long best_dot = 0;
    bool first = true;
    for (int i = 0; i < 6; ++i) {
        const auto o = kHexAxialOffsets[static_cast<std::size_t>(i)];
        // 4 x cartesian dot product, kept in integers
        const long dot = 9L * d.q * o.q + 3L * (2L * d.r + d.q) * (2L * o.r + o.q);
        if (first || dot > best_dot) {
            best = i + 1;
            best_dot = dot;
            first = false;
        }
    }
    return best;
}

}  // namespace detail

/// Preferred directions for a remaining difference. Square: vertical first,
/// then horizontal, remaining directions clockwise from the primary. Hex: the
/// nearest axis to an axial difference, then the order the triple scan uses.
inline std::vector<Direction> choose_direction(DeltaVector delta, Tessellation tess) {
    std::vector<Direction> out;
    if (tess == Tessellation::Hex) {
        // hex differences are axial (dq, dr); see hex_delta
        const int j = detail::nearest_hex_axis({delta.x, delta.y});
        for (int k : {j, hex_pred(j), hex_succ(j), hex_succ(hex_succ(j)), hex_succ(hex_succ(hex_succ(j))),
                      hex_pred(hex_pred(j))})
            out.push_back(hex_dir(k));
        return out;
    }
    std::optional<Direction> primary, secondary;
    const std::optional<Direction> vertical =
        delta.y > 0 ? std::optional{kFwd} : delta.y < 0 ? std::optional{kBack} : std::nullopt;
    const std::optional<Direction> horizontal =
        delta.x > 0 ? std::optional{kRight} : delta.x < 0 ? std::optional{kLeft} : std::nullopt;
    if (vertical) {
        primary = vertical;
        secondary = horizontal;
    } else {
        primary = horizontal.value_or(kFwd);
    }
    out.push_back(*primary);
    if (secondary) out.push_back(*secondary);
    for (int k = 1; k < 4; ++k) {
        const Direction d = rotate_cw(*primary, Tessellation::Square, k);
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    return out;
}

/// Axial difference (dq, dr) between two stored hex cells.
inline DeltaVector hex_delta(CellCoord from, CellCoord to) {
    const HexCoord a = offset_to_axial(from);
    const HexCoord b = offset_to_axial(to);
    return {b.q - a.q, b.r - a.r};
}

/// Preferred hex axis (1-based) from `from` towards `to`.
inline int hex_preferred_axis(CellCoord from, CellCoord to) {
    const DeltaVector d = hex_delta(from, to);
    return detail::nearest_hex_axis({d.x, d.y});
}

/// +1 when the horizontal preference lies clockwise of the vertical primary,
/// -1 when counter-clockwise, 0 when there is no secondary preference.
inline int secondary_sign(DeltaVector delta) {
    if (delta.x == 0 || delta.y == 0) return 0;
    const Direction primary = delta.y > 0 ? kFwd : kBack;
    const Direction secondary = delta.x > 0 ? kRight : kLeft;
    return secondary == rotate_cw(primary, Tessellation::Square) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Square candidate analysis

/// Side corner used as the second lookahead cell of candidate b_i: the corner
/// on the target side. Returns the corner index for NeighborhoodView::corner.
inline int target_side_corner(int i, int sign) {
    i = NeighborhoodView::wrap4(i);
    if (sign == 0) return i;  // clockwise side
    switch (i) {
        case 1: return sign > 0 ? 1 : 4;
        case 2: return 1;
        case 3: return sign > 0 ? 2 : 3;
        default: return 4;
    }
}

inline int other_side_corner(int i, int sign) {
    i = NeighborhoodView::wrap4(i);
    const int ts = target_side_corner(i, sign);
    const int cw = i;                              // corner between b_i and b_{i+1}
    const int ccw = NeighborhoodView::wrap4(i - 1); // corner between b_{i-1} and b_i
    return ts == cw ? ccw : cw;
}

/// Candidate b_i is eligible when it is free and its lookahead pair is not
/// fully blocked. With no secondary preference only the straight-on cell counts.
inline bool candidate_eligible(const NeighborhoodView& view, int i, int sign) {
    if (view.b(i).occupied()) return false;
    const bool onward = view.onward(i).occupied();
    if (sign == 0) return !onward;
    const bool side = view.corner(target_side_corner(i, sign)).occupied();
    return !(onward && side);
}

/// Neighbor bits of the receiving cell b_i in its own frame.
inline RuleInputs rule_inputs(const NeighborhoodView& view, int i, int sign) {
    return {view.corner(other_side_corner(i, sign)).occupied(), view.onward(i).occupied(),
            view.corner(target_side_corner(i, sign)).occupied()};
}

namespace detail {

struct ScanResult {
    std::optional<int> candidate;  // 1..4
    int examined = 0;
    bool rule_applied = false;
};

inline CellCoord offset_of(Direction d) { return kSquareOffsets[d.index % 4]; }

enum class ScanMode { Lookahead, FreeOnly };

/// Clockwise scan b1..b4. `allowed` masks candidates (bit i-1 for b_i).
inline ScanResult scan_square(const NeighborhoodView& view, DeltaVector delta, int sign, unsigned allowed,
                              ScanMode mode, std::optional<RuleNumber> rule) {
    ScanResult r;
    for (int i = 1; i <= 4; ++i) {
        if (!(allowed & (1u << (i - 1)))) continue;
        ++r.examined;
        if (view.b(i).occupied()) continue;
        const CellCoord o = offset_of(view.direction_of(i));
        const bool is_target = delta.x == o.x && delta.y == o.y;
        if (is_target || mode == ScanMode::FreeOnly) {
            r.candidate = i;
            return r;
        }
        if (!candidate_eligible(view, i, sign)) continue;
        if (rule && rule_output(*rule, rule_inputs(view, i, sign))) continue;
        r.candidate = i;
        r.rule_applied = rule.has_value();
        return r;
    }
    return r;
}

}  // namespace detail

/// Active signal of b0: the first eligible candidate scanning clockwise from the
/// frame direction, or none when all four are ineligible. A candidate that is the
/// target itself only needs to be free.
inline std::optional<Direction> generate_active_signal(const NeighborhoodView& view, DeltaVector delta) {
    const int sign = view.frame == choose_direction(delta, Tessellation::Square).front() ? secondary_sign(delta) : 0;
    const auto r = detail::scan_square(view, delta, sign, 0xf, detail::ScanMode::Lookahead, std::nullopt);
    if (!r.candidate) return std::nullopt;
    return view.direction_of(*r.candidate);
}

// ---------------------------------------------------------------------------
// Hex candidate analysis

struct HexScan {
    std::optional<int> index;  // 1..6
    int examined = 0;
};

/// Examines C_j, C_{j-1}, C_{j+1}; when all three are blocked continues
/// clockwise with C_{j+2}, C_{j+3}, C_{j+4}. `blocked[k]` is C_{k+1}.
inline HexScan hex_scan(const std::array<bool, 6>& blocked, int j) {
    const int order[6] = {j, hex_pred(j), hex_succ(j), hex_succ(hex_succ(j)), hex_succ(hex_succ(hex_succ(j))),
                          hex_pred(hex_pred(j))};
    HexScan r;
    for (int k : order) {
        ++r.examined;
        if (!blocked[static_cast<std::size_t>(k - 1)]) {
            r.index = k;
            return r;
        }
    }
    return r;
}

inline std::optional<int> hex_active_signal(const std::array<bool, 6>& blocked, int j) {
    if (j < 1 || j > 6) throw Error("hex direction index must be in 1..6, got " + std::to_string(j));
    return hex_scan(blocked, j).index;
}

// ---------------------------------------------------------------------------
// Sensing

/// Copies the cells around the robot from the ground truth into its known map.
inline void sense(const Grid& truth, RobotAgent& robot) {
    if (!robot.known) robot.known.emplace(truth);
    auto& km = *robot.known;
    auto reveal = [&](CellCoord c) {
        if (!truth.in_bounds(c)) return;
        km.grid.set(c, truth.at(c));
        km.sensed[truth.index(c)] = 1;
    };
    if (truth.tessellation() == Tessellation::Square) {
        for (const auto& c : neighborhood_cells(robot.cell, kFwd)) reveal(c);
    } else {
        reveal(robot.cell);
        for (int i = 0; i < 6; ++i)
            reveal(step_in_direction(robot.cell, Direction{static_cast<std::uint8_t>(i)}, Tessellation::Hex));
    }
}

// ---------------------------------------------------------------------------
// Step

/// Outcome of the read-only half of a step.
struct Decision {
    enum class Kind { Arrived, Move, Stuck } kind = Kind::Stuck;
    Direction direction{};
    CellCoord to{};
    int examined = 0;
    int rule = 0;
    bool blocked_by_robot = false;  // a ring-1 cell holds another robot
    int cells_read = 0;
};

/// Decides the robot's next cell from its neighborhood in `world`. Reads at most
/// 13 cells (7 on a hex lattice).
inline Decision decide(const Grid& world, const RobotAgent& robot, const EngineConfig& cfg) {
    Decision d;
    const Tessellation tess = world.tessellation();
    const DeltaVector delta = delta_to(robot.cell, robot.target);
    if (delta.is_zero()) {
        d.kind = Decision::Kind::Arrived;
        return d;
    }
    ReadCounter rc;
    auto other_robot = [&](CellState s) { return s.is_active() && s.robot_id() != robot.id; };

    if (tess == Tessellation::Square) {
        const Direction primary = choose_direction(delta, tess).front();
        const int sign = secondary_sign(delta);
        const NeighborhoodView view = neighborhood(world, robot.cell, primary, &rc);
        d.cells_read = rc.reads;
        for (int i = 1; i <= 4; ++i) d.blocked_by_robot |= other_robot(view.b(i));

        unsigned back_mask = 0;
        if (robot.previous) {
            for (int i = 1; i <= 4; ++i)
                if (step_in_direction(robot.cell, view.direction_of(i), tess) == *robot.previous)
                    back_mask = 1u << (i - 1);
        }
        const unsigned fwd_mask = 0xfu & ~back_mask;
        using detail::ScanMode;
        struct Pass {
            unsigned mask;
            ScanMode mode;
        };
        const Pass passes[4] = {{fwd_mask, ScanMode::Lookahead},
                                {back_mask, ScanMode::Lookahead},
                                {fwd_mask, ScanMode::FreeOnly},
                                {back_mask, ScanMode::FreeOnly}};
        for (const auto& p : passes) {
            if (p.mask == 0) continue;
            const auto r = detail::scan_square(view, delta, sign, p.mask, p.mode,
                                               p.mode == ScanMode::Lookahead ? std::optional{cfg.rule} : std::nullopt);
            d.examined += r.examined;
            if (r.candidate) {
                d.kind = Decision::Kind::Move;
                d.direction = view.direction_of(*r.candidate);
                d.to = step_in_direction(robot.cell, d.direction, tess);
                d.rule = r.rule_applied ? cfg.rule.value() : 0;
                return d;
            }
        }
        d.kind = Decision::Kind::Stuck;
        return d;
    }

    const HexView view = hex_neighbors(world, robot.cell, &rc);
    d.cells_read = rc.reads;
    std::array<bool, 6> blocked{};
    for (std::size_t k = 0; k < 6; ++k) {
        blocked[k] = view.ring[k].occupied();
        d.blocked_by_robot |= other_robot(view.ring[k]);
    }
    const int j = hex_preferred_axis(robot.cell, robot.target);
    std::array<bool, 6> no_back = blocked;
    bool has_back = false;
    if (robot.previous) {
        const int b = direction_between(robot.cell, *robot.previous, tess);
        if (b >= 0 && !blocked[static_cast<std::size_t>(b)]) {
            no_back[static_cast<std::size_t>(b)] = true;
            has_back = true;
        }
    }
    HexScan r = hex_scan(no_back, j);
    d.examined = r.examined;
    if (!r.index && has_back) {
        r = hex_scan(blocked, j);
        d.examined += r.examined;
    }
    if (!r.index) {
        d.kind = Decision::Kind::Stuck;
        return d;
    }
    d.kind = Decision::Kind::Move;
    d.direction = hex_dir(*r.index);
    d.to = step_in_direction(robot.cell, d.direction, tess);
    return d;
}

namespace detail {

/// Sensor frame the control unit sees for a decision.
inline fsm::SensorFrame control_frame(const RobotAgent& robot, const Decision& d, Tessellation tess) {
    fsm::SensorFrame f;
    const bool idle = robot.control == fsm::ControlState::Calm || robot.control == fsm::ControlState::Stopped;
    switch (d.kind) {
        case Decision::Kind::Arrived: f.g6 = true; return f;
        case Decision::Kind::Stuck: f.g6 = !d.blocked_by_robot; return f;
        case Decision::Kind::Move: break;
    }
    if (idle) {
        f.g0 = true;
        return f;
    }
    const int steps = turn_steps(robot.heading, d.direction, tess);
    const int half = direction_count(tess) / 2;
    if (steps == half) f.g7 = true;
    else if (steps < 0) f.g1 = true;
    else if (steps > 0) f.g0 = true;  // right steer pulse
    return f;
}

}  // namespace detail

/// Applies a decision to the world and the robot; returns the tick's trace.
inline StepTrace commit(Grid& world, RobotAgent& robot, const Decision& d, std::int64_t tick,
                        const EngineConfig& cfg) {
    const Tessellation tess = world.tessellation();
    StepTrace t;
    t.tick = tick;
    t.robot = robot.id;
    t.from = robot.cell;
    t.to = robot.cell;
    t.examined = d.examined;
    t.rule = d.rule;
    t.cells_read = d.cells_read;

    robot.control = fsm::transition(robot.control, detail::control_frame(robot, d, tess)).state;

    switch (d.kind) {
        case Decision::Kind::Arrived:
            robot.status = RobotStatus::Arrived;
            robot.odometer.finish(robot.cell);
            break;
        case Decision::Kind::Stuck:
            if (!d.blocked_by_robot) {
                robot.status = RobotStatus::Deadlocked;
                robot.odometer.finish(robot.cell);
            }
            break;
        case Decision::Kind::Move: {
            if (!world.in_bounds(d.to) || world.at(d.to).occupied())
                throw Error("move of robot " + std::to_string(robot.id) + " into occupied cell " + to_string(d.to));
            world.set(robot.cell, CellState::free());
            world.set(d.to, CellState::active(robot.id));
            if (d.direction != robot.heading) robot.odometer.turn(robot.cell, robot.heading, d.direction);
            robot.odometer.advance_cell();
            robot.previous = robot.cell;
            robot.cell = d.to;
            robot.heading = d.direction;
            t.to = d.to;
            t.direction = d.direction;
            robot.delta = delta_to(robot.cell, robot.target);
            if (robot.delta.is_zero()) {
                robot.status = RobotStatus::Arrived;
                robot.control = fsm::transition(robot.control, fsm::SensorFrame{.g6 = true}).state;
                robot.odometer.finish(robot.cell);
                break;
            }
            const int n = ++robot.visit_counts[detail::VisitKey{robot.cell, robot.heading.index, robot.delta}];
            if (n >= cfg.recurrence_limit) {
                robot.status = RobotStatus::Deadlocked;
                robot.odometer.finish(robot.cell);
            }
            break;
        }
    }
    robot.delta = delta_to(robot.cell, robot.target);
    t.status = robot.status;
    return t;
}

/// One synchronous tick for a single robot.
inline StepTrace step(Grid& world, RobotAgent& robot, std::int64_t tick, const EngineConfig& cfg = {}) {
    if (!world.in_bounds(robot.cell) || world.at(robot.cell) != CellState::active(robot.id))
        throw Error("robot " + std::to_string(robot.id) + " is not placed on the grid");
    const Grid* view = &world;
    if (robot.known) {
        sense(world, robot);
        view = &robot.known->grid;
    }
    return commit(world, robot, decide(*view, robot, cfg), tick, cfg);
}

// ---------------------------------------------------------------------------
// Navigation

enum class Outcome : std::uint8_t { Reached, Deadlocked, BudgetExhausted };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Reached: return "reached";
        case Outcome::Deadlocked: return "deadlocked";
        case Outcome::BudgetExhausted: return "budget_exhausted";
    }
    return "?";
}

struct NavigationResult {
    Outcome outcome = Outcome::BudgetExhausted;
    std::vector<CellCoord> path;
    std::int64_t ticks = 0;
    std::vector<StepTrace> trace;
};

inline std::int64_t default_max_ticks(const Grid& g) { return 4LL * g.width() * g.height(); }

/// Places the robot and validates start and target.
inline void place_robot(Grid& world, RobotAgent& robot) {
    if (!world.in_bounds(robot.cell)) throw Error("start " + to_string(robot.cell) + " is out of bounds");
    if (!world.in_bounds(robot.target)) throw Error("target " + to_string(robot.target) + " is out of bounds");
    if (world.at(robot.cell).occupied()) throw Error("start " + to_string(robot.cell) + " is not free");
    if (world.at(robot.target).is_obstacle()) throw Error("target " + to_string(robot.target) + " is an obstacle");
    world.set(robot.cell, CellState::active(robot.id));
    robot.delta = delta_to(robot.cell, robot.target);
    robot.status = RobotStatus::Moving;
}

/// Steps until the robot arrives, deadlocks, or the tick budget runs out.
/// `world` must not contain the robot yet; it is placed on a copy.
inline NavigationResult navigate(const Grid& world, RobotAgent robot, std::int64_t max_ticks,
                                 const EngineConfig& cfg = {}, bool fog = false) {
    Grid g = world;
    place_robot(g, robot);
    if (fog) robot.known.emplace(g);
    NavigationResult res;
    res.path.push_back(robot.cell);
    if (robot.delta.is_zero()) {
        robot.status = RobotStatus::Arrived;
        res.outcome = Outcome::Reached;
        return res;
    }
    while (res.ticks < max_ticks) {
        const StepTrace t = step(g, robot, res.ticks + 1, cfg);
        ++res.ticks;
        if (t.to != t.from) res.path.push_back(t.to);
        res.trace.push_back(t);
        if (robot.status == RobotStatus::Arrived) {
            res.outcome = Outcome::Reached;
            return res;
        }
        if (robot.status == RobotStatus::Deadlocked) {
            res.outcome = Outcome::Deadlocked;
            return res;
        }
    }
    res.outcome = Outcome::BudgetExhausted;
    return res;
}

}  // namespace acnav
