// Navigates one robot around a wall and prints the step-numbered map, the
// trajectory memory it recorded, and the control unit's state graph.

#include <iostream>

#include "acnav/acnav.hpp"

int main() {
    using namespace acnav;
    const std::string text =
        ".....F.....\n"
        "...........\n"
        "..#######..\n"
        "...........\n"
        ".....S.....\n";
    const auto map = sim::parse_map(text);
    const auto& spec = map.robots.front();

    RobotAgent robot(spec.id, spec.start, spec.target);
    const auto res = navigate(map.grid, robot, default_max_ticks(map.grid));
    std::cout << "outcome " << to_string(res.outcome) << " after " << res.ticks << " ticks\n\n";
    std::cout << sim::render_ascii(map, res.trace) << '\n';

    const auto memory = compile_path_to_memory(res.path, WheelModel{});
    std::cout << memory_to_csv(memory) << '\n';
    std::cout << fsm::export_state_graph();
}
