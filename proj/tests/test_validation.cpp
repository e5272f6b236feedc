#include <doctest.h>

#include <algorithm>
#include <random>

#include "mrtapf/error.hpp"
#include "mrtapf/pipeline.hpp"
#include "mrtapf/validation.hpp"
#include "oracles.hpp"

using namespace mrtapf;

namespace {

Instance make_instance(GridMap map, std::vector<Cell> starts, std::vector<Cell> goals) {
    Instance inst;
    inst.map = std::move(map);
    inst.starts = std::move(starts);
    inst.goals = std::move(goals);
    return inst;
}

bool has_kind(const ValidationReport& r, ViolationKind kind) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

// Two robots in a 3x3 grid that both stand on (1,1) at t = 3.
TimedSolution colliding_solution() {
    TimedSolution sol;
    sol.paths = {Path{{{0, 1}, {0, 1}, {0, 1}, {1, 1}}}, Path{{{2, 1}, {2, 1}, {2, 1}, {1, 1}}}};
    sol.per_robot_cost = {3, 0};
    sol.goal_arrival = {3};
    sol.flowtime = 3;
    return sol;
}

}  // namespace

TEST_CASE("validate flags a vertex conflict") {
    const Instance inst = make_instance(GridMap(3, 3), {{0, 1}, {2, 1}}, {{1, 1}});
    const ValidationReport r = validate(inst, colliding_solution(), RoutePlan{{{0}, {}}});
    CHECK_FALSE(r.ok());
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::VertexConflict);
    CHECK(r.violations[0].cells == std::vector<Cell>{{1, 1}});
    CHECK(r.violations[0].t == 3);
    CHECK(r.to_text().find("vertex_conflict") != std::string::npos);
}

TEST_CASE("validate flags edge conflicts, illegal steps and obstacles") {
    const Instance inst = make_instance(GridMap(3, 2, {{2, 1}}), {{0, 0}, {1, 0}}, {});
    TimedSolution sol;
    sol.paths = {Path{{{0, 0}, {1, 0}, {2, 1}}}, Path{{{1, 0}, {0, 0}, {0, 0}}}};
    sol.per_robot_cost = {0, 0};
    sol.goal_arrival = {};
    const ValidationReport r = validate(inst, sol, RoutePlan{{{}, {}}});
    CHECK(has_kind(r, ViolationKind::EdgeConflict));
    CHECK(has_kind(r, ViolationKind::Continuity));
    CHECK(has_kind(r, ViolationKind::Obstacle));
}

TEST_CASE("validate flags missed, duplicated and late goals") {
    const Instance inst = make_instance(GridMap(4, 1), {{0, 0}}, {{1, 0}, {3, 0}});
    TimedSolution sol;
    sol.paths = {Path{{{0, 0}, {1, 0}}}};
    sol.goal_arrival = {1, -1};
    sol.per_robot_cost = {1};
    sol.flowtime = 1;

    const ValidationReport missing = validate(inst, sol, RoutePlan{{{0}}});
    CHECK(has_kind(missing, ViolationKind::GoalMissed));

    const ValidationReport unvisited = validate(inst, sol, RoutePlan{{{0, 1}}});
    CHECK(has_kind(unvisited, ViolationKind::GoalMissed));

    sol.goal_arrival = {0, -1};
    CHECK(has_kind(validate(inst, sol, RoutePlan{{{0}}}), ViolationKind::GoalMissed));

    CHECK(has_kind(validate(inst, sol, RoutePlan{{{0, 0, 1}}}), ViolationKind::GoalDuplicated));

    sol.goal_arrival = {1, -1};
    sol.flowtime = 7;
    CHECK(has_kind(validate(inst, sol, RoutePlan{{{0}}}), ViolationKind::CostMismatch));
}

TEST_CASE("validate rejects malformed solutions") {
    const Instance inst = make_instance(GridMap(3, 3), {{0, 1}, {2, 1}}, {{1, 1}});
    TimedSolution ragged = colliding_solution();
    ragged.paths[1].cells.pop_back();
    CHECK_THROWS_AS(validate(inst, ragged, RoutePlan{{{0}, {}}}), Error);
    TimedSolution missing = colliding_solution();
    missing.paths.pop_back();
    CHECK_THROWS_AS(validate(inst, missing, RoutePlan{{{0}, {}}}), Error);
}

TEST_CASE("brute_force_optimum examples") {
    const Instance one = make_instance(GridMap(5, 1), {{0, 0}}, {{4, 0}});
    const auto r1 = brute_force_optimum(one);
    REQUIRE(r1.has_value());
    CHECK(r1->flowtime == 4);
    CHECK(r1->plan == RoutePlan{{{0}}});

    const Instance idle = make_instance(GridMap(3, 3), {{0, 0}, {2, 2}}, {});
    CHECK(brute_force_optimum(idle)->flowtime == 0);

    // Goal walled off from both robots.
    const Instance walled = make_instance(GridMap(5, 1, {{2, 0}}), {{0, 0}, {1, 0}}, {{3, 0}});
    CHECK_FALSE(brute_force_optimum(walled).has_value());

    const Instance big = make_instance(GridMap(6, 5), {{0, 0}}, {{1, 1}});
    CHECK_THROWS_AS(brute_force_optimum(big), Error);
}

TEST_CASE("joint_plan_flowtime: pinned robots in a corridor") {
    // Robot 1 sits between robot 0 and the goal: no plan giving the goal to robot 0 works.
    const Instance inst = make_instance(GridMap(3, 1), {{0, 0}, {1, 0}}, {{2, 0}});
    CHECK_FALSE(joint_plan_flowtime(inst, RoutePlan{{{0}, {}}}).has_value());
    CHECK(joint_plan_flowtime(inst, RoutePlan{{{}, {0}}}) == 1);
    CHECK(brute_force_optimum(inst)->flowtime == 1);
}

TEST_CASE("brute_force_optimum is invariant under goal permutation") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        Instance inst = generate_instance(5, 4, 0.2, 2, 3, rng());
        const auto base = brute_force_optimum(inst);
        std::shuffle(inst.goals.begin(), inst.goals.end(), rng);
        const auto shuffled = brute_force_optimum(inst);
        REQUIRE(base.has_value() == shuffled.has_value());
        if (base) CHECK(base->flowtime == shuffled->flowtime);
        // The oracle's flowtime bounds the route-cost optimum from above.
        if (base) CHECK(base->flowtime >= oracle::route_optimum(inst).cost);
    }
}

TEST_CASE("solver output validates on 100 seeded instances") {
    SolveOptions opts;
    opts.sa.max_iter = 2'000;
    opts.node_limit = 20'000;
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = generate_instance(16, 16, 0.3, 1 + static_cast<int>(seed % 5), 2 + static_cast<int>(seed % 7),
                                                seed);
        try {
            const SolveOutcome out = solve_instance(inst, opts);
            CHECK_MESSAGE(out.report.ok(), out.report.to_text());
            ++solved;
        } catch (const Error& e) {
            CHECK(e.kind() != ErrorKind::InvalidInput);
        }
    }
    CHECK(solved >= 95);
}
