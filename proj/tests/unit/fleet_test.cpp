#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "acnav/fleet.hpp"
#include "support/oracles.hpp"

using namespace acnav;

namespace {

using Spec = FleetWorld::Spec;

/// Random fleet instance with distinct starts and distinct targets.
std::vector<Spec> random_specs(std::mt19937_64& rng, const Grid& g, int n) {
    std::set<CellCoord> starts, targets;
    std::vector<Spec> out;
    while (static_cast<int>(out.size()) < n) {
        const CellCoord s = oracle::random_cell(rng, g.width(), g.height());
        const CellCoord f = oracle::random_cell(rng, g.width(), g.height());
        if (g.at(s).is_obstacle() || g.at(f).is_obstacle() || starts.count(s) || targets.count(f)) continue;
        starts.insert(s);
        targets.insert(f);
        out.push_back({static_cast<int>(out.size()), s, f});
    }
    return out;
}

void check_safety(const FleetResult& res, const Grid& truth, std::size_t robots) {
    std::map<std::int64_t, std::vector<StepTrace>> by_tick;
    for (const auto& t : res.trace) by_tick[t.tick].push_back(t);
    std::map<int, CellCoord> where;
    for (const auto& nr : res.robots) where[static_cast<int>(&nr - res.robots.data())] = nr.path.front();
    for (const auto& [tick, ts] : by_tick) {
        for (const auto& t : ts) {
            ASSERT_EQ(where.at(t.robot), t.from) << "tick " << tick;
            ASSERT_FALSE(truth.at(t.to).is_obstacle());
        }
        for (const auto& a : ts)
            for (const auto& b : ts)
                if (a.robot < b.robot && a.from != a.to && b.from != b.to) {
                    ASSERT_FALSE(a.to == b.from && b.to == a.from) << "swap at tick " << tick;
                }
        for (const auto& t : ts) where[t.robot] = t.to;
        std::set<CellCoord> cells;
        for (const auto& [id, c] : where) cells.insert(c);
        ASSERT_EQ(cells.size(), robots) << "co-occupancy at tick " << tick;
    }
}

}  // namespace

TEST(FleetWorld, RejectsDuplicates) {
    const Grid g(Tessellation::Square, 5, 5);
    EXPECT_THROW(FleetWorld(g, {{0, {0, 0}, {4, 4}}, {1, {0, 0}, {3, 3}}}), Error);
    EXPECT_THROW(FleetWorld(g, {{0, {0, 0}, {4, 4}}, {0, {1, 0}, {3, 3}}}), Error);
    EXPECT_THROW(FleetWorld(g, {{0, {0, 0}, {4, 4}}}, {.d_min = 0}), Error);
    EXPECT_THROW(FleetWorld(new_grid(Tessellation::Square, 5, 5, std::vector<CellCoord>{{4, 4}}), {{0, {0, 0}, {4, 4}}}), Error);
}

TEST(FleetWorld, DisjointCorridorsAreIndependent) {
    const Grid g(Tessellation::Square, 6, 5);
    FleetWorld w(g, {{0, {0, 0}, {5, 0}}, {1, {0, 4}, {5, 4}}});
    const auto res = run_fleet(w, 100);
    for (int k = 0; k < 2; ++k) {
        const auto& spec = k == 0 ? Spec{0, {0, 0}, {5, 0}} : Spec{1, {0, 4}, {5, 4}};
        const auto solo = navigate(g, RobotAgent(spec.id, spec.start, spec.target), 100);
        EXPECT_EQ(res.robots[static_cast<std::size_t>(k)].trace, solo.trace);
        EXPECT_EQ(res.robots[static_cast<std::size_t>(k)].outcome, Outcome::Reached);
    }
}

TEST(FleetWorld, SameCellLowerIdWins) {
    const Grid g(Tessellation::Square, 3, 3);
    FleetWorld w(g, {{1, {1, 0}, {1, 2}}, {0, {0, 1}, {2, 1}}});
    const auto ts = w.tick_fleet();
    ASSERT_EQ(ts.size(), 2u);
    EXPECT_EQ(ts[0].robot, 0);
    EXPECT_EQ(ts[0].to, (CellCoord{1, 1}));
    EXPECT_EQ(ts[1].robot, 1);
    EXPECT_EQ(ts[1].to, ts[1].from);
    EXPECT_EQ(ts[1].status, RobotStatus::Moving);
    EXPECT_FALSE(ts[1].direction.has_value());
}

TEST(SeparationViolations, Examples) {
    const Grid g(Tessellation::Square, 5, 5);
    EXPECT_TRUE(separation_violations(FleetWorld(g, {{0, {0, 0}, {4, 4}}}, {.d_min = 2})).empty());
    const auto v = separation_violations(FleetWorld(g, {{0, {0, 0}, {4, 4}}, {1, {0, 1}, {4, 3}}}, {.d_min = 2}));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], (SeparationViolation{0, 1, 1}));
    EXPECT_TRUE(separation_violations(FleetWorld(g, {{0, {0, 0}, {4, 4}}, {1, {3, 3}, {4, 3}}}, {.d_min = 2})).empty());
}

TEST(RunFleet, OneRobotReducesToNavigate) {
    std::mt19937_64 rng(91);
    for (int k = 0; k < 100; ++k) {
        const Tessellation t = k % 2 ? Tessellation::Hex : Tessellation::Square;
        const CellCoord s = oracle::random_cell(rng, 12, 12), f = oracle::random_cell(rng, 12, 12);
        const Grid g = oracle::random_grid(rng, t, 12, 12, 0.2, {s, f});
        FleetWorld w(g, {{0, s, f}});
        const auto fr = run_fleet(w, default_max_ticks(g));
        const auto nr = navigate(g, RobotAgent(0, s, f, t), default_max_ticks(g));
        ASSERT_EQ(fr.trace, nr.trace);
        ASSERT_EQ(fr.robots[0].outcome, nr.outcome);
        ASSERT_EQ(fr.robots[0].path, nr.path);
        ASSERT_EQ(fr.robots[0].ticks, nr.ticks);
    }
}

TEST(RunFleet, CrossingPathsBothArrive) {
    const Grid g(Tessellation::Square, 10, 10);
    FleetWorld w(g, {{0, {0, 5}, {9, 5}}, {1, {5, 0}, {5, 9}}});
    const auto res = run_fleet(w, default_max_ticks(g));
    EXPECT_EQ(res.robots[0].outcome, Outcome::Reached);
    EXPECT_EQ(res.robots[1].outcome, Outcome::Reached);
    check_safety(res, g, 2);
    // expected log: every entry into a cell some other robot entered before
    std::map<CellCoord, std::set<int>> visitors;
    std::map<CellCoord, int> first;
    std::vector<IntersectionEntry> expect;
    auto visit = [&](std::int64_t tick, int robot, CellCoord c) {
        if (!visitors[c].empty() && !(visitors[c].size() == 1 && visitors[c].count(robot)))
            expect.push_back({tick, robot, c, first.at(c)});
        if (!first.count(c)) first[c] = robot;
        visitors[c].insert(robot);
    };
    visit(0, 0, {0, 5});
    visit(0, 1, {5, 0});
    for (const auto& t : res.trace)
        if (t.to != t.from) visit(t.tick, t.robot, t.to);
    EXPECT_FALSE(expect.empty());
    EXPECT_EQ(res.intersection_log, expect);
}

TEST(RunFleet, CorridorSwapDeadlocks) {
    const Grid g(Tessellation::Square, 7, 1);
    FleetWorld w(g, {{0, {0, 0}, {6, 0}}, {1, {6, 0}, {0, 0}}});
    const auto res = run_fleet(w, default_max_ticks(g));
    EXPECT_TRUE(res.robots[0].outcome == Outcome::Deadlocked || res.robots[1].outcome == Outcome::Deadlocked);
    check_safety(res, g, 2);
}

TEST(RunFleet, CorridorWithPocketNeverSwaps) {
    // 1x5 corridor with a side pocket above the middle cell
    Grid g(Tessellation::Square, 5, 2);
    for (int x : {0, 1, 3, 4}) g.set({x, 1}, CellState::obstacle());
    FleetWorld w(g, {{0, {0, 0}, {4, 0}}, {1, {4, 0}, {0, 0}}});
    const auto res = run_fleet(w, default_max_ticks(g));
    check_safety(res, g, 2);
    bool held = false;
    for (const auto& t : res.trace) held |= t.from == t.to && t.status == RobotStatus::Moving;
    EXPECT_TRUE(held);
    for (const auto& r : res.robots) EXPECT_NE(r.outcome, Outcome::BudgetExhausted);
}

TEST(RunFleet, RandomInstancesAreSafe) {
    std::mt19937_64 rng(92);
    for (int k = 0; k < 200; ++k) {
        const Tessellation t = k % 3 == 0 ? Tessellation::Hex : Tessellation::Square;
        const int n = std::uniform_int_distribution<int>(2, 4)(rng);
        const Grid g = oracle::random_grid(rng, t, 12, 12, 0.15);
        const auto specs = random_specs(rng, g, n);
        FleetOptions opts;
        opts.strict_separation = k % 2 == 0;
        opts.d_min = std::uniform_int_distribution<int>(1, 3)(rng);
        FleetWorld w(g, specs, opts);
        const auto res = run_fleet(w, default_max_ticks(g));
        check_safety(res, g, specs.size());
        if (HasFatalFailure()) return;
    }
}

TEST(RunFleet, StrictSeparationHoldsDistance) {
    std::mt19937_64 rng(93);
    for (int k = 0; k < 100; ++k) {
        const Grid g(Tessellation::Square, 12, 12);
        const auto specs = random_specs(rng, g, 3);
        FleetWorld w(g, specs, {.d_min = 3, .strict_separation = true});
        std::map<std::pair<int, int>, int> last;
        for (const auto& a : w.robots())
            for (const auto& b : w.robots())
                if (a.id < b.id) last[{a.id, b.id}] = manhattan(a.cell, b.cell);
        while (!w.all_terminal() && w.tick() < 300) {
            w.tick_fleet();
            for (const auto& a : w.robots())
                for (const auto& b : w.robots()) {
                    if (a.id >= b.id) continue;
                    const int d = manhattan(a.cell, b.cell);
                    ASSERT_GE(d, std::min(3, last[{a.id, b.id}]));
                    last[{a.id, b.id}] = d;
                }
        }
    }
}

TEST(RunFleet, ViolationTicksAreCounted) {
    const Grid g(Tessellation::Square, 6, 3);
    FleetWorld w(g, {{0, {0, 0}, {5, 0}}, {1, {0, 1}, {5, 1}}}, {.d_min = 2});
    const auto res = run_fleet(w, 50);
    EXPECT_EQ(res.robots[0].outcome, Outcome::Reached);
    EXPECT_EQ(w.separation_violation_ticks(), res.ticks);
}

TEST(RunFleet, Deterministic) {
    std::mt19937_64 rng(94);
    const Grid g = oracle::random_grid(rng, Tessellation::Square, 14, 14, 0.2);
    const auto specs = random_specs(rng, g, 4);
    FleetWorld a(g, specs), b(g, specs);
    const auto ra = run_fleet(a, 400), rb = run_fleet(b, 400);
    EXPECT_EQ(ra.trace, rb.trace);
    EXPECT_EQ(ra.intersection_log, rb.intersection_log);
    EXPECT_EQ(intersection_log_csv(ra.intersection_log), intersection_log_csv(rb.intersection_log));
}

TEST(IntersectionLog, Csv) {
    EXPECT_EQ(intersection_log_csv({{3, 1, {2, 4}, 0}}), "tick,robot_id,x,y,first_visitor_id\n3,1,2,4,0\n");
}
