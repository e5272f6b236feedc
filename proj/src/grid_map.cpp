#include "mrtapf/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "mrtapf/error.hpp"

namespace mrtapf {

namespace {

Error bad_input(const std::string& what) { return Error(ErrorKind::InvalidInput, what); }

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

int header_value(std::istream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line)) throw bad_input("malformed header: missing '" + key + "'");
    strip_cr(line);
    std::istringstream fields(line);
    std::string name;
    long long value = 0;
    if (!(fields >> name >> value) || name != key || value <= 0 || value > 1'000'000)
        throw bad_input("malformed header: expected '" + key + " <positive int>', got '" + line + "'");
    return static_cast<int>(value);
}

// Component label per cell index; -1 for blocked cells.
std::vector<int> component_labels(const GridMap& map) {
    std::vector<int> label(static_cast<std::size_t>(map.area()), -1);
    int next = 0;
    int nbrs[4];
    for (int seed = 0; seed < map.area(); ++seed) {
        if (map.is_blocked_index(seed) || label[seed] >= 0) continue;
        std::queue<int> frontier;
        frontier.push(seed);
        label[seed] = next;
        while (!frontier.empty()) {
            int cur = frontier.front();
            frontier.pop();
            int k = map.neighbor_indices(cur, nbrs);
            for (int i = 0; i < k; ++i) {
                if (label[nbrs[i]] < 0) {
                    label[nbrs[i]] = next;
                    frontier.push(nbrs[i]);
                }
            }
        }
        ++next;
    }
    return label;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Cell& c) { return os << '(' << c.x << ',' << c.y << ')'; }

GridMap::GridMap(int width, int height, const std::vector<Cell>& blocked) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw bad_input("grid dimensions must be positive");
    blocked_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    for (const Cell& c : blocked) {
        if (!in_bounds(c)) throw bad_input("blocked cell out of bounds");
        blocked_[index(c)] = 1;
    }
}

std::vector<Cell> GridMap::blocked_cells() const {
    std::vector<Cell> out;
    for (int i = 0; i < area(); ++i)
        if (blocked_[i]) out.push_back(cell(i));
    return out;
}

int GridMap::blocked_count() const {
    return static_cast<int>(std::count(blocked_.begin(), blocked_.end(), std::uint8_t{1}));
}

std::vector<Cell> GridMap::neighbors(Cell c) const {
    if (!is_free(c)) throw bad_input("neighbors: cell is blocked or out of bounds");
    int nbrs[4];
    int k = neighbor_indices(index(c), nbrs);
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out.push_back(cell(nbrs[i]));
    return out;
}

int GridMap::neighbor_indices(int idx, int out[4]) const {
    const int x = idx % width_;
    const int y = idx / width_;
    int k = 0;
    if (y > 0 && !blocked_[idx - width_]) out[k++] = idx - width_;
    if (y + 1 < height_ && !blocked_[idx + width_]) out[k++] = idx + width_;
    if (x > 0 && !blocked_[idx - 1]) out[k++] = idx - 1;
    if (x + 1 < width_ && !blocked_[idx + 1]) out[k++] = idx + 1;
    return k;
}

GridMap parse_map(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw bad_input("malformed header: empty map file");
    strip_cr(line);
    if (line.rfind("type", 0) != 0) throw bad_input("malformed header: expected 'type octile'");
    const int height = header_value(in, "height");
    const int width = header_value(in, "width");
    if (!std::getline(in, line)) throw bad_input("malformed header: missing 'map'");
    strip_cr(line);
    if (line != "map") throw bad_input("malformed header: expected 'map', got '" + line + "'");

    std::vector<Cell> blocked;
    int rows = 0;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty() && rows == height) continue;
        if (rows == height) throw bad_input("row count mismatch: more than " + std::to_string(height) + " rows");
        if (static_cast<int>(line.size()) != width)
            throw bad_input("row width mismatch at row " + std::to_string(rows) + ": expected " +
                            std::to_string(width) + ", got " + std::to_string(line.size()));
        for (int x = 0; x < width; ++x) {
            const char ch = line[static_cast<std::size_t>(x)];
            if (ch == '@')
                blocked.push_back({x, rows});
            else if (ch != '.')
                throw bad_input(std::string("illegal character '") + ch + "' at row " + std::to_string(rows));
        }
        ++rows;
    }
    if (rows != height)
        throw bad_input("row count mismatch: expected " + std::to_string(height) + ", got " + std::to_string(rows));
    return GridMap(width, height, blocked);
}

GridMap parse_map_string(const std::string& text) {
    std::istringstream in(text);
    return parse_map(in);
}

GridMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bad_input("cannot open map file '" + path + "'");
    return parse_map(in);
}

std::string render_map(const GridMap& map) {
    std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " +
                      std::to_string(map.width()) + "\nmap\n";
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) out += map.is_free({x, y}) ? '.' : '@';
        out += '\n';
    }
    return out;
}

void check_instance(const Instance& instance) {
    if (instance.starts.empty()) throw bad_input("instance needs at least one robot");
    std::set<Cell> seen;
    for (const Cell& c : instance.starts) {
        if (!instance.map.is_free(c)) throw bad_input("start cell is blocked or out of bounds");
        if (!seen.insert(c).second) throw bad_input("start cells must be pairwise distinct");
    }
    for (const Cell& c : instance.goals) {
        if (!instance.map.is_free(c)) throw bad_input("goal cell is blocked or out of bounds");
        if (!seen.insert(c).second) throw bad_input("goal cells must be distinct from each other and from starts");
    }
}

Instance generate_instance(int width, int height, double obstacle_ratio, int n, int m, std::uint64_t seed) {
    if (width <= 0 || height <= 0) throw bad_input("grid dimensions must be positive");
    if (!(obstacle_ratio >= 0.0 && obstacle_ratio < 1.0)) throw bad_input("obstacle ratio must lie in [0, 1)");
    if (n < 1 || m < 0) throw bad_input("need n >= 1 robots and m >= 0 goals");

    const int area = width * height;
    const int obstacles = static_cast<int>(std::floor(obstacle_ratio * area));
    if (n + m > area - obstacles) throw bad_input("insufficient free cells");

    std::mt19937_64 rng(seed);
    std::vector<int> cells(static_cast<std::size_t>(area));
    for (int i = 0; i < area; ++i) cells[i] = i;
    std::shuffle(cells.begin(), cells.end(), rng);

    std::vector<Cell> blocked;
    blocked.reserve(static_cast<std::size_t>(obstacles));
    for (int i = 0; i < obstacles; ++i) blocked.push_back({cells[i] % width, cells[i] / width});

    Instance inst;
    inst.map = GridMap(width, height, blocked);
    inst.seed = seed;

    std::vector<int> free_cells;
    for (int i = 0; i < area; ++i)
        if (!inst.map.is_blocked_index(i)) free_cells.push_back(i);
    std::shuffle(free_cells.begin(), free_cells.end(), rng);

    const std::vector<int> label = component_labels(inst.map);
    std::set<int> start_components;
    std::size_t cursor = 0;
    for (int i = 0; i < n; ++i) {
        const int c = free_cells[cursor++];
        inst.starts.push_back(inst.map.cell(c));
        start_components.insert(label[c]);
    }
    for (int j = 0; j < m; ++j) {
        int attempts = 0;
        while (true) {
            if (cursor >= free_cells.size()) throw bad_input("retry budget exhausted: no free cell left for a reachable goal");
            const int c = free_cells[cursor++];
            if (start_components.count(label[c])) {
                inst.goals.push_back(inst.map.cell(c));
                break;
            }
            if (++attempts > kGoalResampleLimit)
                throw bad_input("retry budget exhausted: map too dense to place reachable goals");
        }
    }
    return inst;
}

}  // namespace mrtapf
