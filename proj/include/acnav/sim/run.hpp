#pragma once
// Run orchestration shared by the CLI and the tests.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acnav/fleet.hpp"
#include "acnav/odometry.hpp"
#include "acnav/sim/map_file.hpp"
#include "acnav/sim/render.hpp"
#include "acnav/sim/scenario.hpp"
#include "acnav/sim/trace_io.hpp"

namespace acnav::sim {

inline constexpr int kExitAllReached = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotReached = 2;

struct RunConfig {
    Tessellation tessellation = Tessellation::Square;
    RuleNumber rule = kRule136;
    bool fog = false;
    std::optional<std::int64_t> max_ticks;  // default 4 * width * height
    std::uint64_t seed = 0;
    int d_min = 1;
    bool strict_separation = false;
    RenderStyle render = RenderStyle::Ascii;
    WheelModel wheel{};
    double odometry_error = 0.0;  // per-revolution scale error for the dead-reckoning check

    void validate() const {
        if (rule != kRule136 && rule != kRule172) throw Error("rule must be 136 or 172");
        if (max_ticks && *max_ticks < 0) throw Error("max ticks must be non-negative");
        if (d_min < 1) throw Error("d-min must be at least 1");
        if (odometry_error < 0.0) throw Error("odometry error must be non-negative");
        wheel.validate();
    }
};

struct RunOutputs {
    std::string trace;          // JSON lines
    std::string summary;        // JSON document
    std::string render;         // empty for RenderStyle::None
    std::string intersections;  // CSV
    int exit_code = kExitAllReached;
    FleetResult result;
};

inline RunOutputs run(const RunConfig& config, const ParsedMap& map, const Scenario& scenario = {}) {
    config.validate();
    if (map.grid.tessellation() != config.tessellation) throw Error("map tessellation does not match the run config");
    if (map.robots.empty()) throw Error("map declares no robots");

    FleetOptions opts;
    opts.engine.rule = config.rule;
    opts.d_min = config.d_min;
    opts.strict_separation = config.strict_separation;
    opts.fog = config.fog;
    opts.wheel = config.wheel;
    FleetWorld world(map.grid, map.robots, opts);

    const std::int64_t budget = config.max_ticks.value_or(default_max_ticks(map.grid));
    RunOutputs out;
    out.result = run_fleet(world, budget, scenario_hooks(scenario));
    const auto& res = out.result;

    const Tessellation tess = config.tessellation;
    out.trace = trace_jsonl(res.trace, tess);
    out.intersections = intersection_log_csv(res.intersection_log);
    out.render = render(map, res.trace, config.render);

    nlohmann::ordered_json summary;
    summary["tessellation"] = to_string(tess);
    summary["rule"] = config.rule.value();
    summary["mode"] = config.fog ? "fog" : "known";
    summary["max_ticks"] = budget;
    summary["seed"] = config.seed;
    summary["d_min"] = config.d_min;
    summary["strict_separation"] = config.strict_separation;
    summary["ticks"] = res.ticks;
    summary["separation_violations"] = world.separation_violation_ticks();
    summary["intersections"] = res.intersection_log.size();
    auto robots = nlohmann::ordered_json::array();
    bool all_reached = true;
    for (std::size_t k = 0; k < world.robots().size(); ++k) {
        const RobotAgent& r = world.robots()[k];
        const NavigationResult& nr = res.robots[k];
        all_reached = all_reached && nr.outcome == Outcome::Reached;

        Odometer od = r.odometer;
        if (r.status == RobotStatus::Moving) od.finish(r.cell);
        const TrajectoryMemory& m = od.memory();
        const Pose start = cell_pose(world.start_cells()[k], m.start_heading, tess, config.wheel);
        const ErrorModel err{config.odometry_error, config.seed + static_cast<std::uint64_t>(r.id), 0.0};
        const Pose end = replay(m, start, config.wheel, err).final_pose;
        const Pose truth = cell_pose(r.cell, r.heading, tess, config.wheel);

        nlohmann::ordered_json jr;
        jr["id"] = r.id;
        jr["outcome"] = to_string(nr.outcome);
        jr["ticks"] = nr.ticks;
        jr["path_length"] = nr.path.size() - 1;
        jr["final"] = {r.cell.x, r.cell.y};
        jr["target"] = {r.target.x, r.target.y};
        jr["revolutions"] = r.odometer.revolutions();
        jr["turn_records"] = m.size();
        const CellCoord dr = snap_to_cell(end, tess, config.wheel);
        jr["dead_reckoned"] = {dr.x, dr.y};
        jr["dead_reckoning_error"] =
            std::round(std::hypot(end.x - truth.x, end.y - truth.y) / config.wheel.cell_pitch * 1e6) / 1e6;
        if (r.known) jr["cells_sensed"] = r.known->sensed_count();
        robots.push_back(std::move(jr));
    }
    summary["robots"] = std::move(robots);
    out.exit_code = all_reached ? kExitAllReached : kExitNotReached;
    summary["exit_code"] = out.exit_code;
    out.summary = summary.dump(2) + "\n";
    return out;
}

}  // namespace acnav::sim
