#include <doctest.h>

#include <limits>
#include <random>
#include <set>

#include "mrtapf/assignment.hpp"
#include "mrtapf/error.hpp"
#include "oracles.hpp"

using namespace mrtapf;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Instance line_instance(int width, std::vector<int> robots, std::vector<int> goals) {
    Instance inst;
    inst.map = GridMap(width, 1);
    for (int x : robots) inst.starts.push_back({x, 0});
    for (int x : goals) inst.goals.push_back({x, 0});
    return inst;
}

bool covers_exactly_once(const RoutePlan& plan, int m) {
    std::vector<int> seen(static_cast<std::size_t>(m), 0);
    for (const auto& r : plan.routes)
        for (int g : r) {
            if (g < 0 || g >= m) return false;
            ++seen[g];
        }
    for (int s : seen)
        if (s != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("route_cost sums open routes") {
    CostMatrix c(1, 2);
    c.set(0, 1, 2);
    c.set(0, 2, 5);
    c.set(1, 2, 4);
    c.set(2, 1, 4);
    CHECK(route_cost(RoutePlan{{{}}}, c) == 0.0);
    CHECK(route_cost(RoutePlan{{{0, 1}}}, c) == 2.0 + 4.0);
    CHECK(route_cost(RoutePlan{{{1, 0}}}, c) == 5.0 + 4.0);

    c.set(1, 2, kInfDistance);
    CHECK(route_cost(RoutePlan{{{0, 1}}}, c) == kInf);
    CHECK_THROWS_AS(route_cost(RoutePlan{{{0}, {1}}}, c), Error);
}

TEST_CASE("greedy_insertion: trivial cases") {
    const Instance one = line_instance(3, {0}, {2});
    CHECK(greedy_insertion(build_cost_matrix(one), 1, 1) == RoutePlan{{{0}}});

    const Instance none = line_instance(3, {0, 2}, {});
    const RoutePlan empty = greedy_insertion(build_cost_matrix(none), 2, 0);
    CHECK(empty.routes.size() == 2);
    CHECK(route_cost(empty, build_cost_matrix(none)) == 0.0);
}

TEST_CASE("greedy_insertion: nearest-depot split on a 5x1 row") {
    const Instance inst = line_instance(5, {0, 4}, {1, 3});
    const auto best = oracle::route_optimum(inst);
    // The enumeration sees 8 plans; the split is the unique optimum.
    CHECK(best.optimal_plans == 1);
    CHECK(best.routes == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(greedy_insertion(build_cost_matrix(inst), 2, 2) == RoutePlan{best.routes});
}

TEST_CASE("greedy_insertion tie-breaks by goal, robot, then position") {
    // Both goals cost 1 from robot 0 or robot 1; goal 0 goes first to robot 0.
    const Instance inst = line_instance(5, {1, 3}, {2, 0});
    // Goal 0 lands with robot 0; goal 1 then ties at +2 between the front and
    // the back of route 0 and takes the earliest position.
    const RoutePlan plan = greedy_insertion(build_cost_matrix(inst), 2, 2);
    CHECK(plan == RoutePlan{{{1, 0}, {}}});
    CHECK(plan == greedy_insertion(build_cost_matrix(inst), 2, 2));
}

TEST_CASE("greedy_insertion fails on a goal nobody can reach") {
    Instance inst;
    inst.map = GridMap(3, 1, {{1, 0}});
    inst.starts = {{0, 0}};
    inst.goals = {{2, 0}};
    CHECK_THROWS_AS(greedy_insertion(build_cost_matrix(inst), 1, 1), Error);
}

TEST_CASE("relocate and swap primitives") {
    const RoutePlan plan{{{0, 1}, {}}};
    CHECK(apply_swap(plan, 0, 1) == RoutePlan{{{1, 0}, {}}});
    CHECK(apply_relocate(plan, 0, 1, 0) == RoutePlan{{{1}, {0}}});
    CHECK(apply_relocate(plan, 1, 0, 0) == RoutePlan{{{1, 0}, {}}});
    CHECK(apply_relocate(RoutePlan{{{0, 1, 2}}}, 0, 0, 2) == RoutePlan{{{1, 2, 0}}});
    CHECK_THROWS_AS(apply_relocate(plan, 0, 2, 0), Error);
    CHECK_THROWS_AS(apply_swap(plan, 0, 7), Error);
}

TEST_CASE("propose_neighbor keeps single goal plans valid") {
    Rng rng(1);
    const RoutePlan plan{{{0}, {}, {}}};
    std::set<int> owners;
    for (int i = 0; i < 200; ++i) {
        const RoutePlan next = propose_neighbor(plan, rng);
        REQUIRE(covers_exactly_once(next, 1));
        for (int k = 0; k < 3; ++k)
            if (!next.routes[k].empty()) owners.insert(k);
    }
    CHECK(owners.size() == 3);
    CHECK(plan == RoutePlan{{{0}, {}, {}}});
}

TEST_CASE("propose_neighbor preserves exactly-once coverage over 10000 proposals") {
    Rng rng(99);
    const RoutePlan start{{{3, 0, 5}, {}, {1, 2}, {4, 6, 7}}};
    RoutePlan plan = start;
    for (int i = 0; i < 10'000; ++i) {
        const RoutePlan next = propose_neighbor(start, rng);
        REQUIRE(covers_exactly_once(next, 8));
        REQUIRE(next.routes.size() == 4);
        plan = propose_neighbor(plan, rng);  // also walk the chain
        REQUIRE(covers_exactly_once(plan, 8));
    }
    CHECK_THROWS_AS(propose_neighbor(RoutePlan{{{}, {}}}, rng), Error);
}

TEST_CASE("simulated_annealing rejects a worse neighbor on its only iteration") {
    // One robot, goals at x=1 and x=2: [0,1] costs 2; any neighbor costs >= 3.
    const Instance inst = line_instance(4, {0}, {1, 2});
    const CostMatrix c = build_cost_matrix(inst);
    const RoutePlan initial{{{0, 1}}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SAResult r = simulated_annealing(initial, c, SAParams{0.1, 1, seed});
        CHECK(r.best == initial);
        CHECK(r.best_cost == 2.0);
        CHECK(r.best_trace.size() == 1);
    }
}

TEST_CASE("simulated_annealing finds the enumerated optimum for 3 goals on a line") {
    const Instance inst = line_instance(7, {3}, {0, 6, 1});
    const auto best = oracle::route_optimum(inst);
    const CostMatrix c = build_cost_matrix(inst);
    const RoutePlan scrambled{{{1, 0, 2}}};
    const SAResult r = simulated_annealing(scrambled, c, SAParams{0.5, 10'000, 4});
    CHECK(r.best_cost == best.cost);
    CHECK(r.best_cost <= route_cost(scrambled, c));
}

TEST_CASE("simulated_annealing is deterministic and its best trace never rises") {
    const Instance inst = generate_instance(16, 16, 0.3, 3, 12, 17);
    const CostMatrix c = build_cost_matrix(inst);
    const RoutePlan initial = greedy_insertion(c, 3, 12);
    const SAParams params{0.1, 5'000, 77};
    const SAResult a = simulated_annealing(initial, c, params);
    const SAResult b = simulated_annealing(initial, c, params);
    CHECK(a.best == b.best);
    CHECK(a.best_trace == b.best_trace);
    CHECK(a.accepted == b.accepted);
    CHECK(a.best_cost <= route_cost(initial, c));
    CHECK(a.best_cost == route_cost(a.best, c));
    for (std::size_t i = 1; i < a.best_trace.size(); ++i) CHECK(a.best_trace[i] <= a.best_trace[i - 1]);
}

TEST_CASE("simulated_annealing handles zero-cost incumbents and bad parameters") {
    // Hand-built matrix whose optimum costs 0.
    CostMatrix c(1, 2);
    c.set(0, 1, 0);
    c.set(1, 2, 0);
    c.set(0, 2, 3);
    c.set(2, 1, 3);
    const SAResult r = simulated_annealing(RoutePlan{{{0, 1}}}, c, SAParams{0.1, 200, 3});
    CHECK(r.best_cost == 0.0);
    for (double f : r.best_trace) CHECK(f == 0.0);

    CHECK_THROWS_AS(simulated_annealing(RoutePlan{{{0, 1}}}, c, SAParams{0.0, 10, 0}), Error);
    CHECK_THROWS_AS(simulated_annealing(RoutePlan{{{0, 1}}}, c, SAParams{0.1, 0, 0}), Error);
    CHECK_THROWS_AS(simulated_annealing(RoutePlan{{{0}}}, c, SAParams{0.1, 10, 0}), Error);
}

TEST_CASE("simulated_annealing reaches the route optimum on small instances") {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Instance inst = generate_instance(8, 8, 0.25, 2, 5, 1000 + seed);
        const CostMatrix c = build_cost_matrix(inst);
        const SAResult r = simulated_annealing(greedy_insertion(c, 2, 5), c, SAParams{0.1, 20'000, seed});
        if (r.best_cost == oracle::route_optimum(inst).cost) ++hits;
    }
    CHECK(hits >= 24);
}
