#include <doctest.h>

#include <random>
#include <set>

#include "mrtapf/error.hpp"
#include "mrtapf/grid_map.hpp"
#include "oracles.hpp"

using namespace mrtapf;

namespace {

std::string header(int w, int h) {
    return "type octile\nheight " + std::to_string(h) + "\nwidth " + std::to_string(w) + "\nmap\n";
}

ErrorKind error_kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected mrtapf::Error");
    return ErrorKind::Infeasible;
}

}  // namespace

TEST_CASE("parse_map reads free and blocked cells") {
    const GridMap open = parse_map_string(header(2, 2) + "..\n..\n");
    CHECK(open.width() == 2);
    CHECK(open.height() == 2);
    CHECK(open.blocked_cells().empty());

    const GridMap one = parse_map_string(header(2, 2) + ".@\n..\n");
    REQUIRE(one.blocked_cells().size() == 1);
    CHECK(one.blocked_cells()[0] == Cell{1, 0});
}

TEST_CASE("parse_map rejects malformed input") {
    CHECK_THROWS_WITH_AS(parse_map_string(header(2, 2) + "...\n...\n"), doctest::Contains("row width mismatch"), Error);
    CHECK_THROWS_WITH_AS(parse_map_string(header(2, 2) + "..\n"), doctest::Contains("row count mismatch"), Error);
    CHECK_THROWS_WITH_AS(parse_map_string(header(2, 2) + "..\n.T\n"), doctest::Contains("illegal character"), Error);
    CHECK_THROWS_WITH_AS(parse_map_string("type octile\nheight x\nwidth 2\nmap\n"), doctest::Contains("malformed header"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_map_string("type octile\nwidth 2\nheight 2\nmap\n"), doctest::Contains("malformed header"),
                         Error);
    CHECK(error_kind_of([] { parse_map_string(""); }) == ErrorKind::InvalidInput);
}

TEST_CASE("parse_map tolerates CRLF line endings") {
    const GridMap g = parse_map_string("type octile\r\nheight 1\r\nwidth 3\r\nmap\r\n.@.\r\n");
    CHECK(g.blocked_cells() == std::vector<Cell>{{1, 0}});
}

TEST_CASE("render_map round-trips random grids") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 9);
        const int h = 1 + static_cast<int>(rng() % 9);
        std::vector<Cell> blocked;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (rng() % 3 == 0) blocked.push_back({x, y});
        const GridMap g(w, h, blocked);
        CHECK(parse_map_string(render_map(g)) == g);
    }
}

TEST_CASE("neighbors: order and exclusions") {
    const GridMap open(3, 3);
    CHECK(open.neighbors({1, 1}) == std::vector<Cell>{{1, 0}, {1, 2}, {0, 1}, {2, 1}});
    CHECK(open.neighbors({0, 0}).size() == 2);

    const GridMap wall(3, 3, {{1, 0}});
    CHECK(wall.neighbors({0, 0}) == std::vector<Cell>{{0, 1}});

    CHECK_THROWS_AS(wall.neighbors({1, 0}), Error);
    CHECK_THROWS_AS(wall.neighbors({3, 0}), Error);
}

TEST_CASE("neighbors never leaves the grid or enters obstacles") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = generate_instance(7, 5, 0.3, 1, 0, rng());
        for (int y = 0; y < 5; ++y) {
            for (int x = 0; x < 7; ++x) {
                if (!inst.map.is_free({x, y})) continue;
                const auto nb = inst.map.neighbors({x, y});
                CHECK(nb.size() <= 4);
                for (const Cell& c : nb) {
                    CHECK(inst.map.is_free(c));
                    CHECK(std::abs(c.x - x) + std::abs(c.y - y) == 1);
                }
            }
        }
    }
}

TEST_CASE("generate_instance is seeded and places obstacles exactly") {
    const Instance a = generate_instance(32, 32, 0.40, 5, 10, 7);
    const Instance b = generate_instance(32, 32, 0.40, 5, 10, 7);
    CHECK(a == b);
    CHECK(render_map(a.map) == render_map(b.map));
    CHECK(a.map.blocked_count() == 409);
    CHECK(generate_instance(32, 32, 0.40, 5, 10, 8).map.blocked_count() == 409);
    CHECK_FALSE(generate_instance(32, 32, 0.40, 5, 10, 8) == a);
}

TEST_CASE("generated instances satisfy the placement invariants") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = generate_instance(32, 32, 0.40, 10, 20, seed);
        CHECK_NOTHROW(check_instance(inst));
        std::set<Cell> cells(inst.starts.begin(), inst.starts.end());
        cells.insert(inst.goals.begin(), inst.goals.end());
        CHECK(cells.size() == 30);
        for (const Cell& g : inst.goals) {
            bool reachable = false;
            for (const Cell& s : inst.starts) reachable = reachable || oracle::bfs_distance(inst.map, s, g).has_value();
            CHECK(reachable);
        }
    }
}

TEST_CASE("generate_instance capacity and density failures") {
    CHECK_THROWS_WITH_AS(generate_instance(2, 2, 0.0, 5, 0, 1), doctest::Contains("insufficient free cells"), Error);
    CHECK_THROWS_WITH_AS(generate_instance(1, 1, 0.0, 1, 1, 1), doctest::Contains("insufficient free cells"), Error);
    CHECK_THROWS_AS(generate_instance(0, 3, 0.0, 1, 0, 1), Error);
    CHECK_THROWS_AS(generate_instance(3, 3, 1.0, 1, 0, 1), Error);
    CHECK_THROWS_AS(generate_instance(3, 3, 0.0, 0, 0, 1), Error);
}

TEST_CASE("generate_instance gives up on goals no start can reach") {
    // A 3x1 strip with one obstacle: when the obstacle lands in the middle the
    // two free cells are disconnected and no reachable goal exists.
    int exhausted = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        try {
            const Instance inst = generate_instance(3, 1, 0.34, 1, 1, seed);
            CHECK(oracle::bfs_distance(inst.map, inst.starts[0], inst.goals[0]).has_value());
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("retry budget exhausted") != std::string::npos);
            CHECK(e.kind() == ErrorKind::InvalidInput);
            ++exhausted;
        }
    }
    CHECK(exhausted > 0);
}

TEST_CASE("check_instance rejects overlapping placements") {
    Instance inst;
    inst.map = GridMap(3, 1);
    inst.starts = {{0, 0}};
    inst.goals = {{0, 0}};
    CHECK_THROWS_AS(check_instance(inst), Error);
    inst.goals = {{1, 0}, {1, 0}};
    CHECK_THROWS_AS(check_instance(inst), Error);
    inst.goals = {{1, 0}};
    inst.starts = {};
    CHECK_THROWS_AS(check_instance(inst), Error);
}
