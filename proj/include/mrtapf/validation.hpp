#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrtapf/assignment.hpp"
#include "mrtapf/grid_map.hpp"
#include "mrtapf/recurrent_cbs.hpp"

namespace mrtapf {

enum class ViolationKind {
    Continuity,
    Obstacle,
    VertexConflict,
    EdgeConflict,
    GoalMissed,
    GoalDuplicated,
    CostMismatch,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::vector<int> robots;
    std::vector<Cell> cells;
    int t = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_text() const;
};

/// Independent check of a timed solution against the instance and plan.
/// Throws InvalidInput when the solution is malformed (ragged or missing paths).
ValidationReport validate(const Instance& instance, const TimedSolution& solution, const RoutePlan& plan);

struct OracleLimits {
    int max_robots = 2;
    int max_goals = 4;
    int max_cells = 25;
};

struct OracleResult {
    int flowtime = 0;
    RoutePlan plan;
};

/// Exact optimum over every assignment and ordering of goals, each scored by
/// a uniform-cost search over joint robot positions and task progress.
/// Returns nullopt when no assignment admits a conflict-free execution.
/// Throws InvalidInput when the instance exceeds `limits`.
std::optional<OracleResult> brute_force_optimum(const Instance& instance, const OracleLimits& limits = {});

/// Optimal conflict-free flowtime for a fixed plan, or nullopt if infeasible.
std::optional<int> joint_plan_flowtime(const Instance& instance, const RoutePlan& plan);

/// Optimal sum of costs for single start/goal pairs by uniform-cost search
/// over joint states; robots that settle on their goal stay there forever.
std::optional<int> joint_optimal_soc(const GridMap& map, const std::vector<Cell>& starts,
                                     const std::vector<Cell>& goals);

}  // namespace mrtapf
