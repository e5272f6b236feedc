#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mrtapf {

/// Grid cell; x is the column, y the row, origin at the top-left corner.
struct Cell {
    int x = 0;
    int y = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::ostream& operator<<(std::ostream& os, const Cell& c);

/// 4-connected occupancy grid. Immutable once built.
class GridMap {
public:
    GridMap() = default;
    GridMap(int width, int height, const std::vector<Cell>& blocked = {});

    int width() const { return width_; }
    int height() const { return height_; }
    int area() const { return width_ * height_; }

    bool in_bounds(Cell c) const { return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_; }
    bool is_free(Cell c) const { return in_bounds(c) && !blocked_[index(c)]; }
    bool is_blocked_index(int i) const { return blocked_[static_cast<std::size_t>(i)] != 0; }

    int index(Cell c) const { return c.y * width_ + c.x; }
    Cell cell(int index) const { return {index % width_, index / width_}; }

    std::vector<Cell> blocked_cells() const;
    int blocked_count() const;

    /// Free 4-neighbors in the order up, down, left, right. Throws on a blocked
    /// or out-of-bounds query cell.
    std::vector<Cell> neighbors(Cell c) const;

    /// Index-based neighbor expansion used by the searches; writes at most
    /// four entries and returns how many were written.
    int neighbor_indices(int index, int out[4]) const;

    friend bool operator==(const GridMap&, const GridMap&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> blocked_;
};

GridMap parse_map(std::istream& in);
GridMap parse_map_string(const std::string& text);
GridMap load_map(const std::string& path);
std::string render_map(const GridMap& map);

struct Instance {
    GridMap map;
    std::vector<Cell> starts;
    std::vector<Cell> goals;
    std::uint64_t seed = 0;

    int num_robots() const { return static_cast<int>(starts.size()); }
    int num_goals() const { return static_cast<int>(goals.size()); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws ErrorKind::InvalidInput when the instance invariants do not hold.
void check_instance(const Instance& instance);

/// Goal resampling budget used by generate_instance.
inline constexpr int kGoalResampleLimit = 100;

/// Seeded random instance: obstacles first, then starts and goals on the
/// remaining free cells. Every goal is reachable from at least one start.
Instance generate_instance(int width, int height, double obstacle_ratio, int n, int m,
                           std::uint64_t seed);

}  // namespace mrtapf
