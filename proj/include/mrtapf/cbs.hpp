#pragma once

#include <optional>
#include <vector>

#include "mrtapf/deadline.hpp"
#include "mrtapf/grid_map.hpp"
#include "mrtapf/shortest_path.hpp"

namespace mrtapf {

/// Timestep-indexed path; cells[t] is the position at time t. cost() is the
/// arrival time at the goal (the robot stays there afterwards).
struct Path {
    std::vector<Cell> cells;

    int cost() const { return static_cast<int>(cells.size()) - 1; }
    friend bool operator==(const Path&, const Path&) = default;
};

enum class ConstraintKind { Vertex, Edge };

/// Vertex: robot may not be at `cell` at time t (t >= 1).
/// Edge: robot may not move `cell` -> `to` between t and t+1.
struct Constraint {
    int robot = 0;
    ConstraintKind kind = ConstraintKind::Vertex;
    Cell cell;
    Cell to;
    int t = 0;

    static Constraint vertex(int robot, Cell c, int t) { return {robot, ConstraintKind::Vertex, c, c, t}; }
    static Constraint edge(int robot, Cell from, Cell to, int t) { return {robot, ConstraintKind::Edge, from, to, t}; }
};

enum class ConflictKind { Vertex, Edge };

/// Vertex: both robots at u at time t. Edge: robot a moves u->v while robot b
/// moves v->u between t and t+1.
struct Conflict {
    int a = 0;
    int b = 0;
    ConflictKind kind = ConflictKind::Vertex;
    Cell u;
    Cell v;
    int t = 0;

    friend bool operator==(const Conflict&, const Conflict&) = default;
};

/// Space-time A* over {up, down, left, right, wait}. Throws Unreachable when
/// the goal lies in another component and Infeasible ("low-level exhausted")
/// when no path exists within the search horizon.
Path low_level_search(const GridMap& map, Cell start, Cell goal, const std::vector<Constraint>& constraints);

/// Same search with a precomputed distance-to-goal table.
Path low_level_search(const GridMap& map, Cell start, Cell goal, const std::vector<Constraint>& constraints,
                      const std::vector<Distance>& goal_distance);

/// First conflict in (t, robot pair) order, vertex conflicts before edge
/// conflicts at equal t; shorter paths are padded with their last cell.
std::optional<Conflict> detect_first_conflict(const std::vector<Path>& paths);

/// Number of (pair, timestep) vertex and edge conflicts.
int count_conflicts(const std::vector<Path>& paths);

int sum_of_costs(const std::vector<Path>& paths);

struct CBSOptions {
    int node_limit = 100'000;
    Deadline deadline;
    bool record_expansions = false;
};

struct CBSExpansion {
    int node = 0;
    int parent = -1;
    int soc = 0;
};

struct CBSResult {
    std::vector<Path> paths;
    std::vector<Constraint> constraints;  // constraint set of the solution node
    int soc = 0;
    int expanded = 0;
    int generated = 0;
    std::vector<CBSExpansion> expansions;
};

/// Optimal sum-of-costs conflict-based search. Throws LimitExceeded when more
/// than node_limit high-level nodes are expanded.
CBSResult cbs_solve(const GridMap& map, const std::vector<Cell>& starts, const std::vector<Cell>& goals,
                    const CBSOptions& options = {});

}  // namespace mrtapf
