#include "mrtapf/validation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "mrtapf/conflict_rules.hpp"
#include "mrtapf/error.hpp"
#include "mrtapf/shortest_path.hpp"

namespace mrtapf {

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Continuity: return "continuity";
        case ViolationKind::Obstacle: return "obstacle";
        case ViolationKind::VertexConflict: return "vertex_conflict";
        case ViolationKind::EdgeConflict: return "edge_conflict";
        case ViolationKind::GoalMissed: return "goal_missed";
        case ViolationKind::GoalDuplicated: return "goal_duplicated";
        case ViolationKind::CostMismatch: return "cost_mismatch";
    }
    return "unknown";
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    os << (ok() ? "ok" : "FAILED") << " (" << violations.size() << " violations)\n";
    for (const Violation& v : violations) {
        os << "  " << to_string(v.kind);
        if (!v.robots.empty()) {
            os << " robots=";
            for (std::size_t i = 0; i < v.robots.size(); ++i) os << (i ? "," : "") << v.robots[i];
        }
        for (const Cell& c : v.cells) os << " cell=" << c;
        if (v.t >= 0) os << " t=" << v.t;
        if (!v.detail.empty()) os << " : " << v.detail;
        os << '\n';
    }
    return os.str();
}

ValidationReport validate(const Instance& instance, const TimedSolution& solution, const RoutePlan& plan) {
    const int n = instance.num_robots();
    const int m = instance.num_goals();
    if (static_cast<int>(solution.paths.size()) != n)
        throw Error(ErrorKind::InvalidInput, "malformed solution: expected one path per robot");
    if (solution.paths.empty() || solution.paths.front().cells.empty())
        throw Error(ErrorKind::InvalidInput, "malformed solution: empty paths");
    const std::size_t len = solution.paths.front().cells.size();
    for (const Path& p : solution.paths)
        if (p.cells.size() != len) throw Error(ErrorKind::InvalidInput, "malformed solution: ragged paths");
    if (static_cast<int>(plan.routes.size()) != n)
        throw Error(ErrorKind::InvalidInput, "malformed plan: expected one route per robot");

    ValidationReport report;
    auto add = [&](ViolationKind kind, std::vector<int> robots, std::vector<Cell> cells, int t, std::string detail) {
        report.violations.push_back({kind, std::move(robots), std::move(cells), t, std::move(detail)});
    };

    // (a) step legality and (b) start cells.
    for (int i = 0; i < n; ++i) {
        const auto& cells = solution.paths[i].cells;
        if (cells.front() != instance.starts[i]) add(ViolationKind::Continuity, {i}, {cells.front()}, 0, "path does not begin at start");
        for (std::size_t t = 0; t < len; ++t) {
            if (!instance.map.is_free(cells[t])) add(ViolationKind::Obstacle, {i}, {cells[t]}, static_cast<int>(t), "");
            if (t + 1 < len && !rules::legal_step(cells[t], cells[t + 1]))
                add(ViolationKind::Continuity, {i}, {cells[t], cells[t + 1]}, static_cast<int>(t), "illegal step");
        }
    }

    // (c) robot-robot conflicts over the full horizon.
    for (std::size_t t = 0; t < len; ++t) {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const Cell a0 = solution.paths[a].cells[t];
                const Cell b0 = solution.paths[b].cells[t];
                if (rules::vertex_conflict(a0, b0)) add(ViolationKind::VertexConflict, {a, b}, {a0}, static_cast<int>(t), "");
                if (t + 1 < len) {
                    const Cell a1 = solution.paths[a].cells[t + 1];
                    const Cell b1 = solution.paths[b].cells[t + 1];
                    if (rules::edge_conflict(a0, a1, b0, b1))
                        add(ViolationKind::EdgeConflict, {a, b}, {a0, a1}, static_cast<int>(t), "");
                }
            }
        }
    }

    // (e) every goal assigned exactly once.
    std::vector<int> owner_count(static_cast<std::size_t>(m), 0);
    for (const auto& route : plan.routes)
        for (int g : route) {
            if (g < 0 || g >= m) throw Error(ErrorKind::InvalidInput, "malformed plan: goal index out of range");
            ++owner_count[g];
        }
    for (int g = 0; g < m; ++g) {
        if (owner_count[g] == 0) add(ViolationKind::GoalMissed, {}, {instance.goals[g]}, -1, "goal " + std::to_string(g) + " unassigned");
        if (owner_count[g] > 1)
            add(ViolationKind::GoalDuplicated, {}, {instance.goals[g]}, -1, "goal " + std::to_string(g) + " assigned twice");
    }

    // (d) route order and recorded arrival times.
    const bool have_arrivals = static_cast<int>(solution.goal_arrival.size()) == m;
    for (int i = 0; i < n; ++i) {
        const auto& route = plan.routes[i];
        const auto& cells = solution.paths[i].cells;
        std::size_t k = 0;
        std::vector<int> visit(route.size(), -1);
        for (std::size_t t = 0; t < len && k < route.size(); ++t) {
            if (cells[t] == instance.goals[route[k]]) visit[k++] = static_cast<int>(t);
        }
        for (std::size_t q = 0; q < route.size(); ++q) {
            const int g = route[q];
            const int recorded = have_arrivals ? solution.goal_arrival[g] : -1;
            if (visit[q] < 0 || recorded < 0 || visit[q] > recorded)
                add(ViolationKind::GoalMissed, {i}, {instance.goals[g]}, recorded,
                    "goal " + std::to_string(g) + " not visited in route order by its recorded arrival");
        }
        const int expected = route.empty() || !have_arrivals ? 0 : solution.goal_arrival[route.back()];
        if (static_cast<int>(solution.per_robot_cost.size()) != n || solution.per_robot_cost[i] != expected)
            add(ViolationKind::CostMismatch, {i}, {}, -1, "per-robot cost differs from final goal arrival");
    }
    const int total = std::accumulate(solution.per_robot_cost.begin(), solution.per_robot_cost.end(), 0);
    if (total != solution.flowtime) add(ViolationKind::CostMismatch, {}, {}, -1, "flowtime differs from sum of per-robot costs");
    return report;
}

namespace {

// Calls visit(next) for every conflict-free joint successor of `pos`. Robots
// with frozen[i] set stay in place.
void for_each_joint_move(const GridMap& map, const std::vector<int>& pos, const std::vector<bool>& frozen,
                         const std::function<void(const std::vector<int>&)>& visit) {
    const int k = static_cast<int>(pos.size());
    std::vector<int> next(pos.size());
    std::function<void(int)> rec = [&](int r) {
        if (r == k) {
            visit(next);
            return;
        }
        int options[5];
        int count = 0;
        if (!frozen[r]) count = map.neighbor_indices(pos[r], options);
        options[count++] = pos[r];
        for (int o = 0; o < count; ++o) {
            const Cell to = map.cell(options[o]);
            const Cell from = map.cell(pos[r]);
            bool clash = false;
            for (int q = 0; q < r && !clash; ++q) {
                const Cell qfrom = map.cell(pos[q]);
                const Cell qto = map.cell(next[q]);
                clash = rules::vertex_conflict(to, qto) || rules::edge_conflict(from, to, qfrom, qto);
            }
            if (clash) continue;
            next[r] = options[o];
            rec(r + 1);
        }
    };
    rec(0);
}

struct Mixed {
    std::vector<std::uint64_t> radix;

    std::uint64_t encode(const std::vector<int>& digits) const {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < digits.size(); ++i) key = key * radix[i] + static_cast<std::uint64_t>(digits[i]);
        return key;
    }
    std::vector<int> decode(std::uint64_t key) const {
        std::vector<int> digits(radix.size());
        for (std::size_t i = radix.size(); i-- > 0;) {
            digits[i] = static_cast<int>(key % radix[i]);
            key /= radix[i];
        }
        return digits;
    }
};

using Entry = std::pair<int, std::uint64_t>;
using MinQueue = std::priority_queue<Entry, std::vector<Entry>, std::greater<>>;

}  // namespace

std::optional<int> joint_plan_flowtime(const Instance& instance, const RoutePlan& plan) {
    check_plan(plan, instance.num_robots(), instance.num_goals());
    const GridMap& map = instance.map;
    const int k = instance.num_robots();
    Mixed code;
    std::vector<int> init;
    for (int i = 0; i < k; ++i) {
        code.radix.push_back(static_cast<std::uint64_t>(map.area()));
        init.push_back(map.index(instance.starts[i]));
    }
    for (int i = 0; i < k; ++i) {
        code.radix.push_back(plan.routes[i].size() + 1);
        init.push_back(0);
    }
    auto complete = [&](const std::vector<int>& s, int i) {
        return s[k + i] == static_cast<int>(plan.routes[i].size());
    };

    std::unordered_map<std::uint64_t, int> best;
    MinQueue open;
    const std::uint64_t start = code.encode(init);
    best[start] = 0;
    open.push({0, start});
    std::vector<bool> frozen(static_cast<std::size_t>(k), false);
    while (!open.empty()) {
        const auto [cost, key] = open.top();
        open.pop();
        if (best[key] < cost) continue;
        const std::vector<int> s = code.decode(key);
        int incomplete = 0;
        for (int i = 0; i < k; ++i) incomplete += complete(s, i) ? 0 : 1;
        if (incomplete == 0) return cost;
        const std::vector<int> pos(s.begin(), s.begin() + k);
        for_each_joint_move(map, pos, frozen, [&](const std::vector<int>& next) {
            std::vector<int> ns = s;
            for (int i = 0; i < k; ++i) {
                ns[i] = next[i];
                if (!complete(s, i) && next[i] == map.index(instance.goals[plan.routes[i][s[k + i]]])) ++ns[k + i];
            }
            const std::uint64_t nkey = code.encode(ns);
            const int ncost = cost + incomplete;
            auto it = best.find(nkey);
            if (it == best.end() || ncost < it->second) {
                best[nkey] = ncost;
                open.push({ncost, nkey});
            }
        });
    }
    return std::nullopt;
}

std::optional<OracleResult> brute_force_optimum(const Instance& instance, const OracleLimits& limits) {
    check_instance(instance);
    const int n = instance.num_robots();
    const int m = instance.num_goals();
    if (n > limits.max_robots || m > limits.max_goals || instance.map.area() > limits.max_cells)
        throw Error(ErrorKind::InvalidInput, "brute_force_optimum: instance exceeds oracle limits");

    const CostMatrix c = build_cost_matrix(instance);
    std::optional<OracleResult> best;
    std::vector<int> owner(static_cast<std::size_t>(m), 0);
    // Enumerate owner assignments in base n, then every ordering per robot.
    std::uint64_t assignments = 1;
    for (int g = 0; g < m; ++g) assignments *= static_cast<std::uint64_t>(n);
    for (std::uint64_t code = 0; code < assignments; ++code) {
        std::uint64_t rest = code;
        RoutePlan plan;
        plan.routes.resize(static_cast<std::size_t>(n));
        for (int g = 0; g < m; ++g) {
            plan.routes[rest % n].push_back(g);
            rest /= static_cast<std::uint64_t>(n);
        }
        std::function<void(int)> orderings = [&](int robot) {
            if (robot == n) {
                const double bound = route_cost(plan, c);
                if (bound == std::numeric_limits<double>::infinity()) return;
                if (best && bound >= best->flowtime) return;
                if (auto f = joint_plan_flowtime(instance, plan); f && (!best || *f < best->flowtime))
                    best = OracleResult{*f, plan};
                return;
            }
            auto& r = plan.routes[robot];
            std::sort(r.begin(), r.end());
            do {
                orderings(robot + 1);
            } while (std::next_permutation(r.begin(), r.end()));
        };
        orderings(0);
    }
    return best;
}

std::optional<int> joint_optimal_soc(const GridMap& map, const std::vector<Cell>& starts,
                                     const std::vector<Cell>& goals) {
    if (starts.size() != goals.size()) throw Error(ErrorKind::InvalidInput, "joint_optimal_soc: |starts| != |goals|");
    const int k = static_cast<int>(starts.size());
    Mixed code;
    std::vector<int> init;
    for (int i = 0; i < k; ++i) {
        code.radix.push_back(static_cast<std::uint64_t>(map.area()));
        init.push_back(map.index(starts[i]));
    }
    for (int i = 0; i < k; ++i) {
        code.radix.push_back(2);
        init.push_back(0);
    }

    std::unordered_map<std::uint64_t, int> best;
    MinQueue open;
    // Push `s` plus every variant where a subset of the robots standing on
    // their goal settle there for good.
    auto relax = [&](const std::vector<int>& s, int cost) {
        std::vector<int> eligible;
        for (int i = 0; i < k; ++i)
            if (!s[k + i] && s[i] == map.index(goals[i])) eligible.push_back(i);
        for (std::uint32_t mask = 0; mask < (1u << eligible.size()); ++mask) {
            std::vector<int> ns = s;
            for (std::size_t e = 0; e < eligible.size(); ++e)
                if (mask & (1u << e)) ns[k + eligible[e]] = 1;
            const std::uint64_t key = code.encode(ns);
            auto it = best.find(key);
            if (it == best.end() || cost < it->second) {
                best[key] = cost;
                open.push({cost, key});
            }
        }
    };
    relax(init, 0);
    while (!open.empty()) {
        const auto [cost, key] = open.top();
        open.pop();
        if (best[key] < cost) continue;
        const std::vector<int> s = code.decode(key);
        std::vector<bool> frozen(static_cast<std::size_t>(k));
        int unsettled = 0;
        for (int i = 0; i < k; ++i) {
            frozen[i] = s[k + i] != 0;
            unsettled += frozen[i] ? 0 : 1;
        }
        if (unsettled == 0) return cost;
        const std::vector<int> pos(s.begin(), s.begin() + k);
        for_each_joint_move(map, pos, frozen, [&](const std::vector<int>& next) {
            std::vector<int> ns = s;
            std::copy(next.begin(), next.end(), ns.begin());
            relax(ns, cost + unsettled);
        });
    }
    return std::nullopt;
}

}  // namespace mrtapf
