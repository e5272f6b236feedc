#include "mrtapf/recurrent_cbs.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "mrtapf/conflict_rules.hpp"
#include "mrtapf/error.hpp"

namespace mrtapf {

RoundState initial_round_state(const Instance& instance, const RoutePlan& plan) {
    check_instance(instance);
    check_plan(plan, instance.num_robots(), instance.num_goals());
    const auto n = static_cast<std::size_t>(instance.num_robots());
    RoundState state;
    state.s_temp = instance.starts;
    state.g_temp = instance.starts;
    state.idx.assign(n, 1);
    state.status.resize(n);
    state.accumulated.resize(n);
    state.per_robot_cost.assign(n, 0);
    state.goal_arrival.assign(static_cast<std::size_t>(instance.num_goals()), -1);
    for (std::size_t i = 0; i < n; ++i) {
        state.status[i] = plan.routes[i].empty() ? RobotStatus::Done : RobotStatus::Working;
        state.accumulated[i].push_back(instance.starts[i]);
    }
    return state;
}

RoundResult advance_round(RoundState& state, const GridMap& map, const RoutePlan& plan,
                          const std::vector<Cell>& goals, const CBSOptions& options) {
    const int n = static_cast<int>(state.s_temp.size());
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
        if (state.status[i] == RobotStatus::Done) {
            state.g_temp[i] = state.s_temp[i];
        } else {
            all_done = false;
            state.g_temp[i] = goals[plan.routes[i][state.idx[i] - 1]];
        }
    }

    RoundResult out;
    out.cbs_paths = cbs_solve(map, state.s_temp, state.g_temp, options).paths;
    ++state.rounds;

    int slice = 0;
    if (all_done) {
        for (const Path& p : out.cbs_paths) slice = std::max(slice, p.cost());
        out.finished = true;
    } else {
        for (int i = 0; i < n; ++i) {
            if (state.status[i] != RobotStatus::Working) continue;
            if (out.fastest < 0 || out.cbs_paths[i].cost() < out.cbs_paths[out.fastest].cost()) out.fastest = i;
        }
        slice = out.cbs_paths[out.fastest].cost();
    }
    out.slice = slice;

    // Working paths are cut at `slice`; done robots are extended with their last cell.
    for (int i = 0; i < n; ++i) {
        const auto& cells = out.cbs_paths[i].cells;
        for (int t = 1; t <= slice; ++t) state.accumulated[i].push_back(rules::position_at(cells, t));
        state.s_temp[i] = rules::position_at(cells, slice);
    }
    if (out.finished) return out;

    const int i = out.fastest;
    const int goal = plan.routes[i][state.idx[i] - 1];
    const int now = static_cast<int>(state.accumulated[i].size()) - 1;
    state.goal_arrival[goal] = now;
    if (state.idx[i] < static_cast<int>(plan.routes[i].size())) {
        ++state.idx[i];
    } else {
        state.status[i] = RobotStatus::Done;
        state.per_robot_cost[i] = now;
    }
    return out;
}

TimedSolution finish_solution(const RoundState& state) {
    TimedSolution sol;
    sol.per_robot_cost = state.per_robot_cost;
    sol.goal_arrival = state.goal_arrival;
    sol.rounds = state.rounds;
    for (const auto& cells : state.accumulated) sol.paths.push_back(Path{cells});
    for (int c : sol.per_robot_cost) sol.flowtime += c;
    sol.makespan = sol.paths.empty() ? 0 : sol.paths.front().cost();
    return sol;
}

TimedSolution solve_recurrent(const Instance& instance, const RoutePlan& plan, const CBSOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    RoundState state = initial_round_state(instance, plan);
    // Every non-final round completes one task, so M + 1 rounds suffice.
    const int max_rounds = instance.num_goals() + instance.num_robots() + 1;
    while (true) {
        if (state.rounds >= max_rounds) throw std::logic_error("recurrent CBS made no progress");
        if (advance_round(state, instance.map, plan, instance.goals, options).finished) break;
    }
    TimedSolution sol = finish_solution(state);
    sol.recbs_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sol;
}

}  // namespace mrtapf
