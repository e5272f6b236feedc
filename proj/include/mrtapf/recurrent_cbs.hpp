#pragma once

#include <vector>

#include "mrtapf/assignment.hpp"
#include "mrtapf/cbs.hpp"
#include "mrtapf/grid_map.hpp"

namespace mrtapf {

enum class RobotStatus { Working, Done };

/// State carried between CBS rounds.
struct RoundState {
    std::vector<Cell> s_temp;
    std::vector<Cell> g_temp;
    std::vector<int> idx;  // 1-based ordinal of the next task in the robot's route
    std::vector<RobotStatus> status;
    std::vector<std::vector<Cell>> accumulated;  // equal length: the global clock
    std::vector<int> goal_arrival;               // per goal index; -1 until served
    std::vector<int> per_robot_cost;
    int rounds = 0;
};

struct RoundResult {
    bool finished = false;
    int fastest = -1;   // robot whose task was completed this round
    int slice = 0;      // timesteps appended to the prefixes
    std::vector<Path> cbs_paths;
};

struct TimedSolution {
    std::vector<Path> paths;
    std::vector<int> per_robot_cost;
    std::vector<int> goal_arrival;
    int flowtime = 0;
    int makespan = 0;
    int rounds = 0;
    double sa_seconds = 0.0;
    double recbs_seconds = 0.0;
};

RoundState initial_round_state(const Instance& instance, const RoutePlan& plan);

/// One CBS round: solve from the current cells to the temporary goals, cut
/// every path at the fastest working robot's arrival, then advance that
/// robot's task index or mark it done.
RoundResult advance_round(RoundState& state, const GridMap& map, const RoutePlan& plan,
                          const std::vector<Cell>& goals, const CBSOptions& options);

TimedSolution finish_solution(const RoundState& state);

TimedSolution solve_recurrent(const Instance& instance, const RoutePlan& plan, const CBSOptions& options = {});

}  // namespace mrtapf
