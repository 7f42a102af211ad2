#pragma once
// Scheduled world changes: `tick add x y`, `tick remove x y`,
// `tick retarget robot x y`. Events of tick t apply before the proposal phase
// of tick t. Lines starting with '%' are comments.

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "acnav/fleet.hpp"

namespace acnav::sim {

struct ScenarioEvent {
    enum class Kind { Add, Remove, Retarget } kind = Kind::Add;
    std::int64_t tick = 0;
    int robot = -1;
    CellCoord cell{};
    int line = 0;
};

struct Scenario {
    std::vector<ScenarioEvent> events;  // nondecreasing ticks

    bool empty() const { return events.empty(); }
};

inline Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::int64_t last_tick = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        std::istringstream ls(line);
        ScenarioEvent e;
        e.line = lineno;
        std::string verb;
        auto bad = [&](const std::string& why) {
            return Error("scenario line " + std::to_string(lineno) + ": " + why);
        };
        if (!(ls >> e.tick >> verb)) throw bad("expected `tick verb ...`");
        if (e.tick < 0) throw bad("tick must be non-negative");
        if (e.tick < last_tick) throw bad("ticks must be nondecreasing");
        last_tick = e.tick;
        if (verb == "add" || verb == "remove") {
            e.kind = verb == "add" ? ScenarioEvent::Kind::Add : ScenarioEvent::Kind::Remove;
        } else if (verb == "retarget") {
            e.kind = ScenarioEvent::Kind::Retarget;
            if (!(ls >> e.robot)) throw bad("retarget needs a robot id");
        } else {
            throw bad("unknown event '" + verb + "'");
        }
        if (!(ls >> e.cell.x >> e.cell.y)) throw bad("expected cell coordinates");
        std::string extra;
        if (ls >> extra) throw bad("unexpected trailing token '" + extra + "'");
        sc.events.push_back(e);
    }
    return sc;
}

/// Applies one event to a running world. Invalid events raise Error.
inline void apply_event(FleetWorld& world, const ScenarioEvent& e) {
    Grid& g = world.grid();
    const std::string where = "scenario line " + std::to_string(e.line) + ": ";
    if (!g.in_bounds(e.cell)) throw Error(where + "cell " + to_string(e.cell) + " is out of bounds");
    switch (e.kind) {
        case ScenarioEvent::Kind::Add:
            if (g.at(e.cell).is_active())
                throw Error(where + "cannot add an obstacle on robot " + std::to_string(g.at(e.cell).robot_id()));
            g.set(e.cell, CellState::obstacle());
            break;
        case ScenarioEvent::Kind::Remove:
            if (g.at(e.cell).is_obstacle()) g.set(e.cell, CellState::free());
            break;
        case ScenarioEvent::Kind::Retarget: {
            RobotAgent* r = world.find(e.robot);
            if (!r) throw Error(where + "unknown robot " + std::to_string(e.robot));
            if (g.at(e.cell).is_obstacle()) throw Error(where + "target " + to_string(e.cell) + " is on '#'");
            r->retarget(e.cell);
            break;
        }
    }
}

/// Hooks that replay a scenario into run_fleet.
inline FleetHooks scenario_hooks(const Scenario& sc) {
    auto next = std::make_shared<std::size_t>(0);
    FleetHooks h;
    h.before_tick = [&sc, next](FleetWorld& w, std::int64_t tick) {
        while (*next < sc.events.size() && sc.events[*next].tick <= tick) apply_event(w, sc.events[(*next)++]);
    };
    h.pending_after = [&sc](std::int64_t tick) {
        return !sc.events.empty() && sc.events.back().tick > tick;
    };
    return h;
}

}  // namespace acnav::sim
