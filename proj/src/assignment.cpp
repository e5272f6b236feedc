#include "mrtapf/assignment.hpp"

#include <limits>
#include <utility>

#include "mrtapf/error.hpp"

namespace mrtapf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double arc(const CostMatrix& c, int from, int to) {
    const Distance d = c.at(from, to);
    return d == kInfDistance ? kInf : static_cast<double>(d);
}

std::pair<int, int> locate(const RoutePlan& plan, int goal) {
    for (int k = 0; k < static_cast<int>(plan.routes.size()); ++k) {
        const auto& r = plan.routes[k];
        for (int p = 0; p < static_cast<int>(r.size()); ++p)
            if (r[p] == goal) return {k, p};
    }
    throw Error(ErrorKind::InvalidInput, "goal " + std::to_string(goal) + " is not in the plan");
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

int RoutePlan::num_goals() const {
    int m = 0;
    for (const auto& r : routes) m += static_cast<int>(r.size());
    return m;
}

void check_plan(const RoutePlan& plan, int n, int m) {
    if (static_cast<int>(plan.routes.size()) != n)
        throw Error(ErrorKind::InvalidInput, "plan has " + std::to_string(plan.routes.size()) + " routes, expected " +
                                                 std::to_string(n));
    std::vector<int> seen(static_cast<std::size_t>(m), 0);
    for (const auto& r : plan.routes) {
        for (int g : r) {
            if (g < 0 || g >= m) throw Error(ErrorKind::InvalidInput, "plan references unknown goal " + std::to_string(g));
            if (seen[g]++) throw Error(ErrorKind::InvalidInput, "goal " + std::to_string(g) + " appears twice in plan");
        }
    }
    for (int g = 0; g < m; ++g)
        if (!seen[g]) throw Error(ErrorKind::InvalidInput, "goal " + std::to_string(g) + " missing from plan");
}

double route_cost(const RoutePlan& plan, const CostMatrix& c) {
    if (static_cast<int>(plan.routes.size()) != c.num_depots())
        throw Error(ErrorKind::InvalidInput, "route_cost: plan and cost matrix disagree on robot count");
    double total = 0.0;
    for (int k = 0; k < static_cast<int>(plan.routes.size()); ++k) {
        int prev = c.depot_vertex(k);
        for (int g : plan.routes[k]) {
            if (g < 0 || g >= c.num_goals()) throw Error(ErrorKind::InvalidInput, "route_cost: goal index out of range");
            const int v = c.goal_vertex(g);
            total += arc(c, prev, v);
            prev = v;
        }
    }
    return total;
}

RoutePlan greedy_insertion(const CostMatrix& c, int n, int m) {
    if (c.num_depots() != n || c.num_goals() != m)
        throw Error(ErrorKind::InvalidInput, "greedy_insertion: cost matrix dimensions do not match n, m");
    RoutePlan plan;
    plan.routes.resize(static_cast<std::size_t>(n));
    std::vector<bool> inserted(static_cast<std::size_t>(m), false);

    for (int round = 0; round < m; ++round) {
        double best = kInf;
        int best_goal = -1, best_route = -1, best_pos = -1;
        for (int g = 0; g < m; ++g) {
            if (inserted[g]) continue;
            const int gv = c.goal_vertex(g);
            for (int k = 0; k < n; ++k) {
                const auto& r = plan.routes[k];
                for (int p = 0; p <= static_cast<int>(r.size()); ++p) {
                    const int prev = p == 0 ? c.depot_vertex(k) : c.goal_vertex(r[p - 1]);
                    double delta = arc(c, prev, gv);
                    if (p < static_cast<int>(r.size())) {
                        const int next = c.goal_vertex(r[p]);
                        delta += arc(c, gv, next) - arc(c, prev, next);
                    }
                    if (delta < best) {
                        best = delta;
                        best_goal = g;
                        best_route = k;
                        best_pos = p;
                    }
                }
            }
        }
        if (best_goal < 0) throw Error(ErrorKind::Unreachable, "greedy_insertion: a goal is unreachable from every robot");
        auto& r = plan.routes[best_route];
        r.insert(r.begin() + best_pos, best_goal);
        inserted[best_goal] = true;
    }
    return plan;
}

RoutePlan apply_relocate(const RoutePlan& plan, int goal, int route, int position) {
    RoutePlan out = plan;
    const auto [k, p] = locate(out, goal);
    out.routes[k].erase(out.routes[k].begin() + p);
    if (route < 0 || route >= static_cast<int>(out.routes.size()))
        throw Error(ErrorKind::InvalidInput, "relocate: route index out of range");
    auto& target = out.routes[route];
    if (position < 0 || position > static_cast<int>(target.size()))
        throw Error(ErrorKind::InvalidInput, "relocate: position out of range");
    target.insert(target.begin() + position, goal);
    return out;
}

RoutePlan apply_swap(const RoutePlan& plan, int goal_a, int goal_b) {
    RoutePlan out = plan;
    const auto [ka, pa] = locate(out, goal_a);
    const auto [kb, pb] = locate(out, goal_b);
    std::swap(out.routes[ka][pa], out.routes[kb][pb]);
    return out;
}

RoutePlan propose_neighbor(const RoutePlan& plan, Rng& rng) {
    const int m = plan.num_goals();
    const int n = static_cast<int>(plan.routes.size());
    if (m < 1) throw Error(ErrorKind::InvalidInput, "propose_neighbor needs at least one goal");

    const bool swap_move = uniform(rng, 0, 1) == 1;
    if (swap_move && m >= 2) {
        const int a = uniform(rng, 0, m - 1);
        int b = uniform(rng, 0, m - 2);
        if (b >= a) ++b;
        return apply_swap(plan, a, b);
    }
    const int goal = uniform(rng, 0, m - 1);
    const int route = uniform(rng, 0, n - 1);
    // Length of the target route once `goal` has been taken out of it.
    const auto [k, p] = locate(plan, goal);
    (void)p;
    const int len = static_cast<int>(plan.routes[route].size()) - (k == route ? 1 : 0);
    const int position = uniform(rng, 0, len);
    return apply_relocate(plan, goal, route, position);
}

SAResult simulated_annealing(const RoutePlan& initial, const CostMatrix& c, const SAParams& params,
                             const Deadline& deadline) {
    if (!(params.t_initial > 0.0)) throw Error(ErrorKind::InvalidInput, "t_initial must be positive");
    if (params.max_iter < 1) throw Error(ErrorKind::InvalidInput, "max_iter must be at least 1");
    check_plan(initial, c.num_depots(), c.num_goals());

    SAResult res;
    res.initial_cost = route_cost(initial, c);
    if (res.initial_cost == kInf) throw Error(ErrorKind::Unreachable, "initial plan has infinite cost");
    res.best = initial;
    res.best_cost = res.initial_cost;
    if (c.num_goals() == 0) return res;

    Rng rng(params.seed);
    RoutePlan current = initial;
    double threshold = params.t_initial;
    const double step = params.t_initial / params.max_iter;
    res.best_trace.reserve(static_cast<std::size_t>(params.max_iter));

    for (int iter = 0; iter < params.max_iter; ++iter) {
        if ((iter & 255) == 0) deadline.check("simulated annealing");
        RoutePlan candidate = propose_neighbor(current, rng);
        const double f = route_cost(candidate, c);
        // A zero-cost incumbent is optimal; only another zero-cost plan may replace the current one.
        const bool accept = res.best_cost == 0.0 ? f == 0.0 : (f - res.best_cost) / res.best_cost < threshold;
        if (accept) {
            ++res.accepted;
            if (f < res.best_cost) {
                res.best = candidate;
                res.best_cost = f;
            }
            current = std::move(candidate);
        }
        threshold -= step;
        res.best_trace.push_back(res.best_cost);
    }
    return res;
}

}  // namespace mrtapf
