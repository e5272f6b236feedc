#pragma once

#include <string>

#include <json.hpp>

#include "mrtapf/assignment.hpp"
#include "mrtapf/grid_map.hpp"
#include "mrtapf/recurrent_cbs.hpp"
#include "mrtapf/validation.hpp"

namespace mrtapf {

using json = nlohmann::json;

struct Scenario {
    std::string map;
    std::vector<Cell> starts;
    std::vector<Cell> goals;
    std::uint64_t seed = 0;
};

json scenario_to_json(const Scenario& scen);
Scenario scenario_from_json(const json& j);

/// Reads the map and scenario files and checks the instance invariants.
Instance load_instance(const std::string& map_path, const std::string& scen_path);

/// `{"routes": [[...]], "cost": c}`
json plan_to_json(const RoutePlan& plan, double cost);

/// Solution file. Wall-clock fields are written as 0 when `with_timing` is false.
json solution_to_json(const TimedSolution& sol, const RoutePlan& plan, bool with_timing = true);
TimedSolution solution_from_json(const json& j);
RoutePlan plan_from_solution_json(const json& j);

json report_to_json(const ValidationReport& report);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mrtapf
