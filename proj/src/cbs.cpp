#include "mrtapf/cbs.hpp"

#include <algorithm>
#include <memory>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "mrtapf/conflict_rules.hpp"
#include "mrtapf/error.hpp"

namespace mrtapf {

namespace {

std::uint64_t time_key(std::uint64_t id, int t) { return (id << 32) | static_cast<std::uint32_t>(t); }

struct ConstraintTable {
    std::unordered_set<std::uint64_t> vertex;
    std::unordered_set<std::uint64_t> edge;
    int latest = -1;       // last timestep any constraint touches
    int goal_latest = -1;  // last vertex-constrained timestep at the goal

    ConstraintTable(const GridMap& map, int goal, const std::vector<Constraint>& constraints) {
        const auto area = static_cast<std::uint64_t>(map.area());
        for (const Constraint& c : constraints) {
            const auto from = static_cast<std::uint64_t>(map.index(c.cell));
            if (c.kind == ConstraintKind::Vertex) {
                vertex.insert(time_key(from, c.t));
                latest = std::max(latest, c.t);
                if (map.index(c.cell) == goal) goal_latest = std::max(goal_latest, c.t);
            } else {
                const auto to = static_cast<std::uint64_t>(map.index(c.to));
                edge.insert(time_key(from * area + to, c.t));
                latest = std::max(latest, c.t + 1);
            }
        }
    }

    bool allowed(int from, int to, int t, std::uint64_t area) const {
        if (!vertex.empty() && vertex.count(time_key(static_cast<std::uint64_t>(to), t + 1))) return false;
        if (!edge.empty() && from != to &&
            edge.count(time_key(static_cast<std::uint64_t>(from) * area + static_cast<std::uint64_t>(to), t)))
            return false;
        return true;
    }
};

struct SearchNode {
    int cell;
    int t;
    int f;
    int parent;
};

using PathPtr = std::shared_ptr<const Path>;

struct HighLevelNode {
    int parent = -1;
    std::optional<Constraint> constraint;
    std::vector<PathPtr> paths;
    int soc = 0;
    int conflicts = 0;
};

std::vector<Path> materialize(const std::vector<PathPtr>& ptrs) {
    std::vector<Path> out;
    out.reserve(ptrs.size());
    for (const auto& p : ptrs) out.push_back(*p);
    return out;
}

}  // namespace

Path low_level_search(const GridMap& map, Cell start, Cell goal, const std::vector<Constraint>& constraints) {
    if (!map.is_free(goal)) throw Error(ErrorKind::InvalidInput, "low-level goal is blocked or out of bounds");
    return low_level_search(map, start, goal, constraints, distances_from(map, goal));
}

Path low_level_search(const GridMap& map, Cell start, Cell goal, const std::vector<Constraint>& constraints,
                      const std::vector<Distance>& goal_distance) {
    if (!map.is_free(start) || !map.is_free(goal))
        throw Error(ErrorKind::InvalidInput, "low-level endpoints must be free cells");
    const int s = map.index(start);
    const int g = map.index(goal);
    if (goal_distance[s] == kInfDistance)
        throw Error(ErrorKind::Unreachable, "unreachable goal");

    const ConstraintTable table(map, g, constraints);
    const int horizon = 2 * map.area() + std::max(table.latest, 0);
    // Beyond the last constrained timestep only the cell matters.
    const int time_cap = table.latest + 1;
    const auto area = static_cast<std::uint64_t>(map.area());
    const int width = map.width();

    std::vector<SearchNode> nodes;
    auto worse = [&](int a, int b) {
        const SearchNode& na = nodes[a];
        const SearchNode& nb = nodes[b];
        return std::make_tuple(na.f, na.t, na.cell % width, na.cell / width) >
               std::make_tuple(nb.f, nb.t, nb.cell % width, nb.cell / width);
    };
    std::priority_queue<int, std::vector<int>, decltype(worse)> open(worse);
    std::unordered_map<std::uint64_t, int> best_t;
    std::unordered_set<std::uint64_t> closed;
    auto key_of = [&](int cell, int t) { return time_key(static_cast<std::uint64_t>(cell), std::min(t, time_cap)); };

    nodes.push_back({s, 0, static_cast<int>(goal_distance[s]), -1});
    best_t[key_of(s, 0)] = 0;
    open.push(0);

    int nbrs[5];
    while (!open.empty()) {
        const int id = open.top();
        open.pop();
        const SearchNode cur = nodes[id];
        const std::uint64_t key = key_of(cur.cell, cur.t);
        if (!closed.insert(key).second) continue;

        if (cur.cell == g && cur.t > table.goal_latest) {
            Path path;
            for (int i = id; i >= 0; i = nodes[i].parent) path.cells.push_back(map.cell(nodes[i].cell));
            std::reverse(path.cells.begin(), path.cells.end());
            return path;
        }
        if (cur.t + 1 > horizon) continue;

        int k = map.neighbor_indices(cur.cell, nbrs);
        nbrs[k++] = cur.cell;  // wait
        for (int i = 0; i < k; ++i) {
            const int next = nbrs[i];
            if (goal_distance[next] == kInfDistance) continue;
            if (!table.allowed(cur.cell, next, cur.t, area)) continue;
            const int t = cur.t + 1;
            const std::uint64_t nkey = key_of(next, t);
            if (closed.count(nkey)) continue;
            auto it = best_t.find(nkey);
            if (it != best_t.end() && it->second <= t) continue;
            best_t[nkey] = t;
            nodes.push_back({next, t, t + static_cast<int>(goal_distance[next]), id});
            open.push(static_cast<int>(nodes.size()) - 1);
        }
    }
    throw Error(ErrorKind::Infeasible, "low-level exhausted");
}

std::optional<Conflict> detect_first_conflict(const std::vector<Path>& paths) {
    std::size_t horizon = 0;
    for (const Path& p : paths) horizon = std::max(horizon, p.cells.size());
    const int n = static_cast<int>(paths.size());
    for (int t = 0; t < static_cast<int>(horizon); ++t) {
        for (int a = 0; a < n; ++a) {
            const Cell pa = rules::position_at(paths[a].cells, t);
            for (int b = a + 1; b < n; ++b) {
                if (rules::vertex_conflict(pa, rules::position_at(paths[b].cells, t)))
                    return Conflict{a, b, ConflictKind::Vertex, pa, pa, t};
            }
        }
        for (int a = 0; a < n; ++a) {
            const Cell a0 = rules::position_at(paths[a].cells, t);
            const Cell a1 = rules::position_at(paths[a].cells, t + 1);
            for (int b = a + 1; b < n; ++b) {
                if (rules::edge_conflict(a0, a1, rules::position_at(paths[b].cells, t),
                                         rules::position_at(paths[b].cells, t + 1)))
                    return Conflict{a, b, ConflictKind::Edge, a0, a1, t};
            }
        }
    }
    return std::nullopt;
}

int count_conflicts(const std::vector<Path>& paths) {
    std::size_t horizon = 0;
    for (const Path& p : paths) horizon = std::max(horizon, p.cells.size());
    const int n = static_cast<int>(paths.size());
    int count = 0;
    for (int t = 0; t < static_cast<int>(horizon); ++t) {
        for (int a = 0; a < n; ++a) {
            const Cell a0 = rules::position_at(paths[a].cells, t);
            const Cell a1 = rules::position_at(paths[a].cells, t + 1);
            for (int b = a + 1; b < n; ++b) {
                const Cell b0 = rules::position_at(paths[b].cells, t);
                if (rules::vertex_conflict(a0, b0)) ++count;
                if (rules::edge_conflict(a0, a1, b0, rules::position_at(paths[b].cells, t + 1))) ++count;
            }
        }
    }
    return count;
}

int sum_of_costs(const std::vector<Path>& paths) {
    int soc = 0;
    for (const Path& p : paths) soc += p.cost();
    return soc;
}

CBSResult cbs_solve(const GridMap& map, const std::vector<Cell>& starts, const std::vector<Cell>& goals,
                    const CBSOptions& options) {
    if (starts.size() != goals.size()) throw Error(ErrorKind::InvalidInput, "cbs_solve: |starts| != |goals|");
    const int n = static_cast<int>(starts.size());
    for (int i = 0; i < n; ++i) {
        if (!map.is_free(starts[i]) || !map.is_free(goals[i]))
            throw Error(ErrorKind::InvalidInput, "cbs_solve: start and goal cells must be free");
        for (int j = 0; j < i; ++j)
            if (starts[i] == starts[j]) throw Error(ErrorKind::InvalidInput, "cbs_solve: starts must be distinct");
    }

    std::vector<std::vector<Distance>> heuristic;
    heuristic.reserve(starts.size());
    for (const Cell& g : goals) heuristic.push_back(distances_from(map, g));

    std::vector<HighLevelNode> tree;
    auto worse = [&](int a, int b) {
        return std::make_tuple(tree[a].soc, tree[a].conflicts, a) > std::make_tuple(tree[b].soc, tree[b].conflicts, b);
    };
    std::priority_queue<int, std::vector<int>, decltype(worse)> open(worse);

    auto constraints_for = [&](int node, int robot) {
        std::vector<Constraint> out;
        for (int i = node; i >= 0; i = tree[i].parent)
            if (tree[i].constraint && tree[i].constraint->robot == robot) out.push_back(*tree[i].constraint);
        return out;
    };

    HighLevelNode root;
    for (int i = 0; i < n; ++i) {
        try {
            root.paths.push_back(std::make_shared<const Path>(low_level_search(map, starts[i], goals[i], {}, heuristic[i])));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Unreachable || e.kind() == ErrorKind::Infeasible)
                throw Error(ErrorKind::Unreachable, "unreachable goal: robot " + std::to_string(i));
            throw;
        }
    }
    {
        const auto paths = materialize(root.paths);
        root.soc = sum_of_costs(paths);
        root.conflicts = count_conflicts(paths);
    }
    tree.push_back(std::move(root));
    open.push(0);

    CBSResult result;
    result.generated = 1;
    while (!open.empty()) {
        options.deadline.check("conflict-based search");
        const int id = open.top();
        open.pop();
        if (result.expanded >= options.node_limit)
            throw Error(ErrorKind::LimitExceeded, "CBS limit exceeded (" + std::to_string(options.node_limit) + " nodes)");
        ++result.expanded;
        if (options.record_expansions) result.expansions.push_back({id, tree[id].parent, tree[id].soc});

        const std::vector<Path> paths = materialize(tree[id].paths);
        const std::optional<Conflict> conflict = detect_first_conflict(paths);
        if (!conflict) {
            result.paths = paths;
            for (int i = id; i >= 0; i = tree[i].parent)
                if (tree[i].constraint) result.constraints.push_back(*tree[i].constraint);
            result.soc = tree[id].soc;
            return result;
        }

        for (int side = 0; side < 2; ++side) {
            const int robot = side == 0 ? conflict->a : conflict->b;
            Constraint added;
            if (conflict->kind == ConflictKind::Vertex)
                added = Constraint::vertex(robot, conflict->u, conflict->t);
            else if (side == 0)
                added = Constraint::edge(robot, conflict->u, conflict->v, conflict->t);
            else
                added = Constraint::edge(robot, conflict->v, conflict->u, conflict->t);

            HighLevelNode child;
            child.parent = id;
            child.constraint = added;
            child.paths = tree[id].paths;
            std::vector<Constraint> cs = constraints_for(id, robot);
            cs.push_back(added);
            try {
                child.paths[robot] = std::make_shared<const Path>(
                    low_level_search(map, starts[robot], goals[robot], cs, heuristic[robot]));
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::Infeasible) continue;
                throw;
            }
            const auto child_paths = materialize(child.paths);
            child.soc = sum_of_costs(child_paths);
            child.conflicts = count_conflicts(child_paths);
            tree.push_back(std::move(child));
            open.push(static_cast<int>(tree.size()) - 1);
            ++result.generated;
        }
    }
    throw Error(ErrorKind::Infeasible, "CBS search exhausted without a conflict-free solution");
}

}  // namespace mrtapf
