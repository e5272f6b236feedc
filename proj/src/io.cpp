#include "mrtapf/io.hpp"

#include <filesystem>
#include <fstream>
#include <limits>

#include "mrtapf/error.hpp"

namespace mrtapf {

namespace {

json cells_to_json(const std::vector<Cell>& cells) {
    json arr = json::array();
    for (const Cell& c : cells) arr.push_back({c.x, c.y});
    return arr;
}

std::vector<Cell> cells_from_json(const json& arr, const char* field) {
    if (!arr.is_array()) throw Error(ErrorKind::InvalidInput, std::string("'") + field + "' must be an array");
    std::vector<Cell> out;
    for (const json& c : arr) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
            throw Error(ErrorKind::InvalidInput, std::string("'") + field + "' entries must be [x, y] integer pairs");
        out.push_back({c[0].get<int>(), c[1].get<int>()});
    }
    return out;
}

}  // namespace

json scenario_to_json(const Scenario& scen) {
    return json{{"map", scen.map}, {"starts", cells_to_json(scen.starts)}, {"goals", cells_to_json(scen.goals)},
                {"seed", scen.seed}};
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "scenario must be a JSON object");
    Scenario s;
    if (j.contains("map")) s.map = j.at("map").get<std::string>();
    if (!j.contains("starts") || !j.contains("goals"))
        throw Error(ErrorKind::InvalidInput, "scenario needs 'starts' and 'goals'");
    s.starts = cells_from_json(j.at("starts"), "starts");
    s.goals = cells_from_json(j.at("goals"), "goals");
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

Instance load_instance(const std::string& map_path, const std::string& scen_path) {
    Instance inst;
    inst.map = load_map(map_path);
    const Scenario s = scenario_from_json(read_json_file(scen_path));
    inst.starts = s.starts;
    inst.goals = s.goals;
    inst.seed = s.seed;
    check_instance(inst);
    return inst;
}

json plan_to_json(const RoutePlan& plan, double cost) {
    json j{{"routes", plan.routes}};
    if (cost == std::numeric_limits<double>::infinity())
        j["cost"] = nullptr;
    else
        j["cost"] = cost;
    return j;
}

json solution_to_json(const TimedSolution& sol, const RoutePlan& plan, bool with_timing) {
    json paths = json::array();
    for (const Path& p : sol.paths) paths.push_back(cells_to_json(p.cells));
    return json{{"flowtime", sol.flowtime},
                {"per_robot_cost", sol.per_robot_cost},
                {"rounds", sol.rounds},
                {"makespan", sol.makespan},
                {"goal_arrival", sol.goal_arrival},
                {"routes", plan.routes},
                {"paths", paths},
                {"sa_seconds", with_timing ? sol.sa_seconds : 0.0},
                {"recbs_seconds", with_timing ? sol.recbs_seconds : 0.0}};
}

TimedSolution solution_from_json(const json& j) {
    try {
        TimedSolution sol;
        sol.flowtime = j.at("flowtime").get<int>();
        sol.per_robot_cost = j.at("per_robot_cost").get<std::vector<int>>();
        sol.rounds = j.at("rounds").get<int>();
        if (j.contains("makespan")) sol.makespan = j.at("makespan").get<int>();
        if (j.contains("goal_arrival")) sol.goal_arrival = j.at("goal_arrival").get<std::vector<int>>();
        for (const json& p : j.at("paths")) sol.paths.push_back(Path{cells_from_json(p, "paths")});
        if (j.contains("sa_seconds")) sol.sa_seconds = j.at("sa_seconds").get<double>();
        if (j.contains("recbs_seconds")) sol.recbs_seconds = j.at("recbs_seconds").get<double>();
        return sol;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed solution file: ") + e.what());
    }
}

RoutePlan plan_from_solution_json(const json& j) {
    try {
        return RoutePlan{j.at("routes").get<std::vector<std::vector<int>>>()};
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("solution file lacks routes: ") + e.what());
    }
}

json report_to_json(const ValidationReport& report) {
    json violations = json::array();
    for (const Violation& v : report.violations) {
        violations.push_back({{"kind", to_string(v.kind)},
                              {"robots", v.robots},
                              {"cells", cells_to_json(v.cells)},
                              {"t", v.t},
                              {"detail", v.detail}});
    }
    return json{{"ok", report.ok()}, {"violations", violations}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, "cannot parse '" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    out << text;
}

}  // namespace mrtapf
