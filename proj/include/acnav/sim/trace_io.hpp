#pragma once
// Line-delimited JSON step traces. One object per robot per tick, fields in
// this fixed order:
//
//   {"tick":1,"robot":0,"from":[0,0],"to":[0,1],"dir":"fwd","examined":1,"rule":136,"status":"moving"}
//
// "dir" is "none" when the robot did not move. "rule" is 0 when no receiving
// cell evaluated an elementary rule (hex lattices, fallback moves, holds).

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "acnav/navigation.hpp"

namespace acnav::sim {

inline std::string trace_line(const StepTrace& t, Tessellation tess) {
    nlohmann::ordered_json j;
    j["tick"] = t.tick;
    j["robot"] = t.robot;
    j["from"] = {t.from.x, t.from.y};
    j["to"] = {t.to.x, t.to.y};
    j["dir"] = t.direction ? direction_name(*t.direction, tess) : std::string("none");
    j["examined"] = t.examined;
    j["rule"] = t.rule;
    j["status"] = to_string(t.status);
    return j.dump();
}

inline std::string trace_jsonl(const std::vector<StepTrace>& trace, Tessellation tess) {
    std::string out;
    for (const auto& t : trace) {
        out += trace_line(t, tess);
        out += '\n';
    }
    return out;
}

inline RobotStatus parse_status(const std::string& s) {
    for (auto st : {RobotStatus::Idle, RobotStatus::Moving, RobotStatus::Arrived, RobotStatus::Deadlocked})
        if (s == to_string(st)) return st;
    throw Error("unknown robot status '" + s + "'");
}

inline std::vector<StepTrace> parse_trace_jsonl(const std::string& text, Tessellation tess) {
    std::vector<StepTrace> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            StepTrace t;
            t.tick = j.at("tick").get<std::int64_t>();
            t.robot = j.at("robot").get<int>();
            t.from = {j.at("from").at(0).get<int>(), j.at("from").at(1).get<int>()};
            t.to = {j.at("to").at(0).get<int>(), j.at("to").at(1).get<int>()};
            const auto dir = j.at("dir").get<std::string>();
            if (dir != "none") {
                for (int i = 0; i < direction_count(tess); ++i) {
                    const Direction d{static_cast<std::uint8_t>(i)};
                    if (direction_name(d, tess) == dir) t.direction = d;
                }
                if (!t.direction) throw Error("unknown direction '" + dir + "'");
            }
            t.examined = j.at("examined").get<int>();
            t.rule = j.at("rule").get<int>();
            t.status = parse_status(j.at("status").get<std::string>());
            out.push_back(t);
        } catch (const nlohmann::json::exception& e) {
            throw Error("trace line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace acnav::sim
