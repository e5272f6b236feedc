#include "mrtapf/shortest_path.hpp"

#include <ostream>
#include <queue>

#include "mrtapf/error.hpp"

namespace mrtapf {

std::vector<Distance> distances_from(const GridMap& map, Cell source) {
    if (!map.is_free(source)) throw Error(ErrorKind::InvalidInput, "distance source is blocked or out of bounds");
    std::vector<Distance> dist(static_cast<std::size_t>(map.area()), kInfDistance);
    std::queue<int> frontier;
    const int s = map.index(source);
    dist[s] = 0;
    frontier.push(s);
    int nbrs[4];
    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop();
        const int k = map.neighbor_indices(cur, nbrs);
        for (int i = 0; i < k; ++i) {
            if (dist[nbrs[i]] == kInfDistance) {
                dist[nbrs[i]] = dist[cur] + 1;
                frontier.push(nbrs[i]);
            }
        }
    }
    return dist;
}

std::optional<Distance> shortest_dist(const GridMap& map, Cell from, Cell to) {
    if (!map.is_free(to)) throw Error(ErrorKind::InvalidInput, "distance target is blocked or out of bounds");
    const Distance d = distances_from(map, from)[map.index(to)];
    if (d == kInfDistance) return std::nullopt;
    return d;
}

CostMatrix::CostMatrix(int num_depots, int num_goals)
    : depots_(num_depots),
      goals_(num_goals),
      data_(static_cast<std::size_t>(num_depots + num_goals) * (num_depots + num_goals), 0) {}

void CostMatrix::write_csv(std::ostream& os) const {
    auto label = [&](int v) { return v < depots_ ? "d" + std::to_string(v) : "g" + std::to_string(v - depots_); };
    for (int j = 0; j < size(); ++j) os << (j ? "," : "") << label(j);
    os << '\n';
    for (int i = 0; i < size(); ++i) {
        for (int j = 0; j < size(); ++j) {
            if (j) os << ',';
            if (finite(i, j))
                os << at(i, j);
            else
                os << "inf";
        }
        os << '\n';
    }
}

CostMatrix build_cost_matrix(const Instance& instance) {
    check_instance(instance);
    const int n = instance.num_robots();
    const int m = instance.num_goals();
    CostMatrix c(n, m);
    auto cell_of = [&](int v) { return v < n ? instance.starts[v] : instance.goals[v - n]; };
    for (int i = 0; i < n + m; ++i) {
        const std::vector<Distance> dist = distances_from(instance.map, cell_of(i));
        for (int j = n; j < n + m; ++j) c.set(i, j, dist[instance.map.index(cell_of(j))]);
        // Depot columns stay zero: robots never return.
    }
    return c;
}

}  // namespace mrtapf
