#pragma once

#include <vector>

#include "mrtapf/grid_map.hpp"

// The single definition of robot-robot conflicts shared by CBS, the
// validator and the joint-state oracles.
namespace mrtapf::rules {

/// Position at time t of a path that stays at its last cell after arrival.
inline Cell position_at(const std::vector<Cell>& cells, int t) {
    return t < static_cast<int>(cells.size()) ? cells[static_cast<std::size_t>(t)] : cells.back();
}

inline bool vertex_conflict(Cell a, Cell b) { return a == b; }

/// Two robots traverse the same edge in opposite directions between t and t+1.
inline bool edge_conflict(Cell a_now, Cell a_next, Cell b_now, Cell b_next) {
    return a_now != a_next && a_now == b_next && a_next == b_now;
}

/// Legal single-step transition: wait, or move to a 4-adjacent cell.
inline bool legal_step(Cell from, Cell to) {
    const int dx = from.x > to.x ? from.x - to.x : to.x - from.x;
    const int dy = from.y > to.y ? from.y - to.y : to.y - from.y;
    return dx + dy <= 1;
}

}  // namespace mrtapf::rules
