#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mrtapf/deadline.hpp"
#include "mrtapf/shortest_path.hpp"

namespace mrtapf {

/// Per-robot ordered goal sequences. routes[k] belongs to robot k and holds
/// goal indices 0..M-1; every goal appears in exactly one route exactly once.
struct RoutePlan {
    std::vector<std::vector<int>> routes;

    int num_goals() const;
    friend bool operator==(const RoutePlan&, const RoutePlan&) = default;
};

/// Throws InvalidInput unless `plan` has `n` routes covering goals 0..m-1
/// exactly once.
void check_plan(const RoutePlan& plan, int n, int m);

struct SAParams {
    double t_initial = 0.1;
    int max_iter = 20'000;
    std::uint64_t seed = 0;
};

struct SAResult {
    RoutePlan best;
    double best_cost = 0.0;
    double initial_cost = 0.0;
    int accepted = 0;
    /// best_trace[k] is f(s*) after iteration k.
    std::vector<double> best_trace;
};

using Rng = std::mt19937_64;

/// Open-route travel cost; +infinity if any arc is unreachable.
double route_cost(const RoutePlan& plan, const CostMatrix& c);

/// Parallel greedy insertion: insert the globally cheapest (goal, route,
/// position) triple until every goal is placed.
RoutePlan greedy_insertion(const CostMatrix& c, int n, int m);

/// Deterministic move primitives behind propose_neighbor.
RoutePlan apply_relocate(const RoutePlan& plan, int goal, int route, int position);
RoutePlan apply_swap(const RoutePlan& plan, int goal_a, int goal_b);

/// One random relocate (p = 1/2) or SWAP move. SWAP falls back to relocate
/// when only one goal exists.
RoutePlan propose_neighbor(const RoutePlan& plan, Rng& rng);

/// Threshold-accepting annealing: a neighbor replaces the current solution
/// when its relative gap to the best-found cost is below T, and T drops by
/// t_initial / max_iter each iteration.
SAResult simulated_annealing(const RoutePlan& initial, const CostMatrix& c, const SAParams& params,
                             const Deadline& deadline = Deadline::none());

}  // namespace mrtapf
