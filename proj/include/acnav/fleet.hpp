#pragma once
// Several robots as several active cells on one surface.
//
// A fleet tick has two phases. Every moving robot first decides against the
// frozen world, reading other robots' cells as occupied. Proposals are then
// resolved in ascending id order: a move is held when a lower id already
// claimed the cell, when it would swap with another robot, or (strict
// separation) when it would bring two robots closer than d_min. Surviving
// moves commit together.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "acnav/navigation.hpp"

namespace acnav {

struct IntersectionEntry {
    std::int64_t tick = 0;
    int robot = 0;
    CellCoord cell{};
    int first_visitor = 0;

    friend bool operator==(const IntersectionEntry&, const IntersectionEntry&) = default;
};

struct SeparationViolation {
    int robot_a = 0;
    int robot_b = 0;
    int distance = 0;

    friend bool operator==(const SeparationViolation&, const SeparationViolation&) = default;
};

struct FleetOptions {
    EngineConfig engine{};
    int d_min = 1;
    bool strict_separation = false;
    bool fog = false;
    WheelModel wheel{};
};

class FleetWorld {
public:
    static constexpr int kMaxRobots = 64;

    struct Spec {
        int id = 0;
        CellCoord start{};
        CellCoord target{};
    };

    FleetWorld(Grid grid, const std::vector<Spec>& robots, FleetOptions options = {})
        : grid_(std::move(grid)), options_(options) {
        if (options_.d_min < 1) throw Error("d_min must be at least 1");
        if (robots.size() > static_cast<std::size_t>(kMaxRobots))
            throw Error("at most " + std::to_string(kMaxRobots) + " robots are supported");
        std::set<int> ids;
        std::set<CellCoord> starts;
        for (const auto& r : robots) {
            if (!ids.insert(r.id).second) throw Error("duplicate robot id " + std::to_string(r.id));
            if (!starts.insert(r.start).second) throw Error("duplicate start cell " + to_string(r.start));
        }
        first_visitor_.assign(grid_.size(), -1);
        visitors_.assign(grid_.size(), 0);
        std::vector<Spec> sorted = robots;
        std::sort(sorted.begin(), sorted.end(), [](const Spec& a, const Spec& b) { return a.id < b.id; });
        for (const auto& s : sorted) {
            RobotAgent r(s.id, s.start, s.target, grid_.tessellation(), options_.wheel);
            place_robot(grid_, r);
            if (options_.fog) r.known.emplace(grid_);
            robots_.push_back(std::move(r));
            start_cells_.push_back(s.start);
        }
        for (std::size_t k = 0; k < robots_.size(); ++k) mark_visit(k, robots_[k].cell);
        for (auto& r : robots_)
            if (r.delta.is_zero()) r.status = RobotStatus::Arrived;
    }

    const Grid& grid() const { return grid_; }
    Grid& grid() { return grid_; }
    const std::vector<RobotAgent>& robots() const { return robots_; }
    std::vector<RobotAgent>& robots() { return robots_; }
    std::int64_t tick() const { return tick_; }
    const FleetOptions& options() const { return options_; }
    const std::vector<IntersectionEntry>& intersection_log() const { return log_; }
    const std::vector<CellCoord>& start_cells() const { return start_cells_; }
    std::int64_t separation_violation_ticks() const { return violation_count_; }

    RobotAgent* find(int id) {
        for (auto& r : robots_)
            if (r.id == id) return &r;
        return nullptr;
    }

    bool all_terminal() const {
        return std::none_of(robots_.begin(), robots_.end(),
                            [](const RobotAgent& r) { return r.status == RobotStatus::Moving; });
    }

    /// Advances every moving robot by one synchronous tick.
    std::vector<StepTrace> tick_fleet();

private:
    void mark_visit(std::size_t k, CellCoord c) {
        const std::size_t idx = grid_.index(c);
        const std::uint64_t self = 1ULL << k;
        if (visitors_[idx] & ~self) log_.push_back({tick_, robots_[k].id, c, first_visitor_[idx]});
        if (first_visitor_[idx] < 0) first_visitor_[idx] = robots_[k].id;
        visitors_[idx] |= self;
    }

    Grid grid_;
    FleetOptions options_;
    std::vector<RobotAgent> robots_;
    std::vector<CellCoord> start_cells_;
    std::int64_t tick_ = 0;
    std::vector<int> first_visitor_;
    std::vector<std::uint64_t> visitors_;  // bit k: robots_[k] has been here
    std::vector<IntersectionEntry> log_;
    std::int64_t violation_count_ = 0;
};

/// Unordered robot pairs closer than d_min (lattice distance).
inline std::vector<SeparationViolation> separation_violations(const FleetWorld& world) {
    std::vector<SeparationViolation> out;
    const auto& rs = world.robots();
    const Tessellation t = world.grid().tessellation();
    for (std::size_t a = 0; a < rs.size(); ++a) {
        for (std::size_t b = a + 1; b < rs.size(); ++b) {
            const int d = lattice_distance(t, rs[a].cell, rs[b].cell);
            if (d < world.options().d_min) out.push_back({rs[a].id, rs[b].id, d});
        }
    }
    return out;
}

inline std::vector<StepTrace> FleetWorld::tick_fleet() {
    ++tick_;
    const Tessellation tess = grid_.tessellation();
    const std::size_t n = robots_.size();

    // Phase 1: decisions against the frozen world.
    std::vector<bool> active(n, false);
    std::vector<Decision> decisions(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto& r = robots_[k];
        if (r.status != RobotStatus::Moving) continue;
        active[k] = true;
        const Grid* view = &grid_;
        if (r.known) {
            sense(grid_, r);
            view = &r.known->grid;
        }
        decisions[k] = decide(*view, r, options_.engine);
    }

    // Phase 2: resolution in ascending id order (robots_ is sorted by id).
    std::vector<bool> hold(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        if (!active[a] || decisions[a].kind != Decision::Kind::Move) continue;
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!active[b] || decisions[b].kind != Decision::Kind::Move) continue;
            if (decisions[a].to == robots_[b].cell && decisions[b].to == robots_[a].cell) hold[a] = hold[b] = true;
        }
    }
    std::vector<CellCoord> tentative(n);
    for (std::size_t k = 0; k < n; ++k) tentative[k] = robots_[k].cell;
    for (std::size_t k = 0; k < n; ++k) {
        if (!active[k] || decisions[k].kind != Decision::Kind::Move || hold[k]) continue;
        const CellCoord to = decisions[k].to;
        bool ok = true;
        for (std::size_t o = 0; o < n && ok; ++o) {
            if (o == k) continue;
            if (tentative[o] == to) ok = false;
            if (ok && options_.strict_separation) {
                const int before = lattice_distance(tess, robots_[k].cell, tentative[o]);
                const int after = lattice_distance(tess, to, tentative[o]);
                if (after < std::min(options_.d_min, before)) ok = false;
            }
        }
        if (ok) tentative[k] = to;
        else hold[k] = true;
    }

    // Commit.
    std::vector<StepTrace> traces;
    for (std::size_t k = 0; k < n; ++k) {
        if (!active[k]) continue;
        Decision d = decisions[k];
        if (hold[k]) {
            d.kind = Decision::Kind::Stuck;
            d.blocked_by_robot = true;
            d.rule = 0;
        }
        const CellCoord before = robots_[k].cell;
        traces.push_back(commit(grid_, robots_[k], d, tick_, options_.engine));
        if (robots_[k].cell != before) mark_visit(k, robots_[k].cell);
    }
    violation_count_ += static_cast<std::int64_t>(separation_violations(*this).size());
    return traces;
}

struct FleetResult {
    std::vector<NavigationResult> robots;  // in ascending id order
    std::vector<IntersectionEntry> intersection_log;
    std::vector<StepTrace> trace;
    std::int64_t ticks = 0;
};

struct FleetHooks {
    /// Runs before the proposal phase of each tick.
    std::function<void(FleetWorld&, std::int64_t tick)> before_tick;
    /// True while events remain scheduled after `tick`; keeps the run alive.
    std::function<bool(std::int64_t tick)> pending_after;
};

/// Ticks until every robot is terminal or the budget is spent.
inline FleetResult run_fleet(FleetWorld& world, std::int64_t max_ticks, const FleetHooks& hooks = {}) {
    FleetResult res;
    const auto& rs = world.robots();
    res.robots.resize(rs.size());
    for (std::size_t k = 0; k < rs.size(); ++k) res.robots[k].path.push_back(rs[k].cell);

    auto pending = [&] { return hooks.pending_after && hooks.pending_after(world.tick()); };
    while (world.tick() < max_ticks && (!world.all_terminal() || pending())) {
        if (hooks.before_tick) hooks.before_tick(world, world.tick() + 1);
        auto traces = world.tick_fleet();
        for (const auto& t : traces) {
            for (std::size_t k = 0; k < rs.size(); ++k) {
                if (rs[k].id != t.robot) continue;
                auto& nr = res.robots[k];
                if (t.to != t.from) nr.path.push_back(t.to);
                nr.ticks = t.tick;
                nr.trace.push_back(t);
            }
        }
        res.trace.insert(res.trace.end(), traces.begin(), traces.end());
    }
    for (std::size_t k = 0; k < rs.size(); ++k) {
        auto& nr = res.robots[k];
        switch (rs[k].status) {
            case RobotStatus::Arrived: nr.outcome = Outcome::Reached; break;
            case RobotStatus::Deadlocked: nr.outcome = Outcome::Deadlocked; break;
            default: nr.outcome = Outcome::BudgetExhausted; break;
        }
    }
    res.intersection_log = world.intersection_log();
    res.ticks = world.tick();
    return res;
}

inline std::string intersection_log_csv(const std::vector<IntersectionEntry>& log) {
    std::string out = "tick,robot_id,x,y,first_visitor_id\n";
    for (const auto& e : log)
        out += std::to_string(e.tick) + "," + std::to_string(e.robot) + "," + std::to_string(e.cell.x) + "," +
               std::to_string(e.cell.y) + "," + std::to_string(e.first_visitor) + "\n";
    return out;
}

}  // namespace acnav
