#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "mrtapf/grid_map.hpp"

namespace mrtapf {

using Distance = std::int64_t;
inline constexpr Distance kInfDistance = std::numeric_limits<Distance>::max();

/// Unit-step distances from `source` to every cell index; kInfDistance for
/// blocked or unreachable cells.
std::vector<Distance> distances_from(const GridMap& map, Cell source);

/// Minimum number of 4-connected steps between two free cells, or nullopt if
/// they lie in different components.
std::optional<Distance> shortest_dist(const GridMap& map, Cell from, Cell to);

/// (N+M) x (N+M) travel costs. Rows/columns 0..N-1 are robot depots, N..N+M-1
/// are goals. Arcs into a depot cost 0 so routes are open-ended.
class CostMatrix {
public:
    CostMatrix() = default;
    CostMatrix(int num_depots, int num_goals);

    int num_depots() const { return depots_; }
    int num_goals() const { return goals_; }
    int size() const { return depots_ + goals_; }

    int depot_vertex(int robot) const { return robot; }
    int goal_vertex(int goal) const { return depots_ + goal; }

    Distance at(int i, int j) const { return data_[static_cast<std::size_t>(i) * size() + j]; }
    void set(int i, int j, Distance d) { data_[static_cast<std::size_t>(i) * size() + j] = d; }

    bool finite(int i, int j) const { return at(i, j) != kInfDistance; }

    /// CSV dump with `d0..,g0..` labels and `inf` for unreachable entries.
    void write_csv(std::ostream& os) const;

private:
    int depots_ = 0;
    int goals_ = 0;
    std::vector<Distance> data_;
};

CostMatrix build_cost_matrix(const Instance& instance);

}  // namespace mrtapf
