// acnav: command-line front end for the active-cell navigation simulator.
//
//   acnav run --map FILE [--scenario FILE] --tessellation square|hex --rule 136|172
//             --mode known|fog --max-ticks N --seed N --d-min N [--strict-separation]
//             --trace OUT --render ascii|svg|none
//   acnav fsm export-truth-table OUT
//   acnav fsm export-graph OUT
//
// Exit codes: 0 every robot reached its target, 2 some robot deadlocked or ran
// out of ticks, 1 input error.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acnav/acnav.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw acnav::Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw acnav::Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw acnav::Error("failed writing '" + path + "'");
}

std::string with_run_suffix(const std::string& path, int k, int runs) {
    return runs > 1 ? path + ".run" + std::to_string(k) : path;
}

struct RunArgs {
    std::string map;
    std::string scenario;
    std::string tessellation = "square";
    int rule = 136;
    std::string mode = "known";
    std::int64_t max_ticks = -1;
    std::uint64_t seed = 0;
    int d_min = 1;
    bool strict = false;
    std::string trace;
    std::string render = "ascii";
    std::string render_out;
    std::string summary_out;
    std::string intersections_out;
    int runs = 1;
    double odometry_error = 0.0;
    double wheel_perimeter = 1.0;
    double cell_pitch = 1.0;
};

int do_run(const RunArgs& a) {
    using namespace acnav;
    sim::RunConfig cfg;
    cfg.tessellation = a.tessellation == "hex" ? Tessellation::Hex : Tessellation::Square;
    cfg.rule = RuleNumber(a.rule);
    cfg.fog = a.mode == "fog";
    if (a.max_ticks >= 0) cfg.max_ticks = a.max_ticks;
    cfg.seed = a.seed;
    cfg.d_min = a.d_min;
    cfg.strict_separation = a.strict;
    cfg.render = sim::parse_render_style(a.render);
    cfg.wheel = {a.wheel_perimeter, a.cell_pitch};
    cfg.odometry_error = a.odometry_error;
    cfg.validate();

    const auto map = sim::parse_map(read_file(a.map), cfg.tessellation);
    const auto scenario = a.scenario.empty() ? sim::Scenario{} : sim::parse_scenario(read_file(a.scenario));

    std::vector<std::future<sim::RunOutputs>> jobs;
    for (int k = 0; k < a.runs; ++k) {
        sim::RunConfig c = cfg;
        c.seed = cfg.seed + static_cast<std::uint64_t>(k);
        jobs.push_back(std::async(std::launch::async, [c, &map, &scenario] { return sim::run(c, map, scenario); }));
    }
    int exit_code = sim::kExitAllReached;
    for (int k = 0; k < a.runs; ++k) {
        const auto out = jobs[static_cast<std::size_t>(k)].get();
        write_file(with_run_suffix(a.trace, k, a.runs), out.trace);
        if (!a.intersections_out.empty()) write_file(with_run_suffix(a.intersections_out, k, a.runs), out.intersections);
        if (a.summary_out.empty()) std::cout << out.summary;
        else write_file(with_run_suffix(a.summary_out, k, a.runs), out.summary);
        if (cfg.render != sim::RenderStyle::None) {
            if (a.render_out.empty()) std::cout << out.render;
            else write_file(with_run_suffix(a.render_out, k, a.runs), out.render);
        }
        exit_code = std::max(exit_code, out.exit_code == sim::kExitNotReached ? sim::kExitNotReached : 0);
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active-cell cellular automaton robot navigation simulator"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Simulate robots on a map");
    run->add_option("--map", ra.map, "Map file")->required()->check(CLI::ExistingFile);
    run->add_option("--scenario", ra.scenario, "Scenario event file")->check(CLI::ExistingFile);
    run->add_option("--tessellation", ra.tessellation)->check(CLI::IsMember({"square", "hex"}));
    run->add_option("--rule", ra.rule, "Elementary rule for inactive cells")->check(CLI::IsMember({136, 172}));
    run->add_option("--mode", ra.mode)->check(CLI::IsMember({"known", "fog"}));
    run->add_option("--max-ticks", ra.max_ticks, "Tick budget (default 4*width*height)");
    run->add_option("--seed", ra.seed);
    run->add_option("--d-min", ra.d_min, "Minimum robot separation in cells")->check(CLI::PositiveNumber);
    run->add_flag("--strict-separation", ra.strict);
    run->add_option("--trace", ra.trace, "Trace output (JSON lines)")->required();
    run->add_option("--render", ra.render)->check(CLI::IsMember({"ascii", "svg", "none"}));
    run->add_option("--render-out", ra.render_out, "Render output file (default stdout)");
    run->add_option("--summary", ra.summary_out, "Summary output file (default stdout)");
    run->add_option("--intersections", ra.intersections_out, "Trajectory intersection log (CSV)");
    run->add_option("--runs", ra.runs, "Independent runs with consecutive seeds")->check(CLI::PositiveNumber);
    run->add_option("--odometry-error", ra.odometry_error, "Per-revolution scale error for dead reckoning");
    run->add_option("--wheel-perimeter", ra.wheel_perimeter)->check(CLI::PositiveNumber);
    run->add_option("--cell-pitch", ra.cell_pitch)->check(CLI::PositiveNumber);

    std::string fsm_out;
    auto* fsm = app.add_subcommand("fsm", "Control unit exports");
    fsm->require_subcommand(1);
    auto* tt = fsm->add_subcommand("export-truth-table", "Write the 1536-row truth table as CSV");
    tt->add_option("out", fsm_out)->required();
    auto* gr = fsm->add_subcommand("export-graph", "Write the state graph in Graphviz format");
    gr->add_option("out", fsm_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : acnav::sim::kExitInputError;
    }

    try {
        if (*run) return do_run(ra);
        if (*tt) write_file(fsm_out, acnav::fsm::truth_table_csv());
        if (*gr) write_file(fsm_out, acnav::fsm::export_state_graph());
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "acnav: " << e.what() << '\n';
        return acnav::sim::kExitInputError;
    }
}
