// Command-line front end: instance generation, solving, validation and the
// benchmark protocol.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mrtapf/bench.hpp"
#include "mrtapf/error.hpp"
#include "mrtapf/io.hpp"
#include "mrtapf/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalidSolution = 3;

int exit_code_for(const mrtapf::Error& e) {
    return e.kind() == mrtapf::ErrorKind::InvalidInput ? kExitInput : kExitInfeasible;
}

std::string render_csv_rows(const std::vector<mrtapf::BenchRow>& rows) {
    std::ostringstream os;
    mrtapf::write_rows_csv(os, rows);
    return os.str();
}

std::string default_summary_path(const std::string& out) {
    std::filesystem::path p(out);
    return (p.parent_path() / (p.stem().string() + "_summary.csv")).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-robot task assignment and path finding: annealing assignment + recurrent CBS"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random instance (<out>.map and <out>.scen)");
    int gen_width = 32, gen_height = 32, gen_robots = 5, gen_goals = 10;
    double gen_obstacles = 0.40;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--width", gen_width, "Map width")->capture_default_str();
    gen->add_option("--height", gen_height, "Map height")->capture_default_str();
    gen->add_option("--obstacles", gen_obstacles, "Obstacle ratio in [0, 1)")->capture_default_str();
    gen->add_option("--robots", gen_robots, "Number of robots")->capture_default_str();
    gen->add_option("--goals", gen_goals, "Number of goals")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output path stem")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "Assign goals and plan conflict-free paths");
    std::string solve_map, solve_scen, solve_out;
    mrtapf::SolveOptions solve_opts;
    solve_opts.time_limit_seconds = 60.0;
    bool solve_no_timing = false;
    solve->add_option("--map", solve_map, "Map file")->required();
    solve->add_option("--scen", solve_scen, "Scenario file")->required();
    solve->add_option("--t-initial", solve_opts.sa.t_initial, "Initial acceptance threshold")->capture_default_str();
    solve->add_option("--max-iter", solve_opts.sa.max_iter, "Annealing iterations")->capture_default_str();
    solve->add_option("--node-limit", solve_opts.node_limit, "CBS high-level node budget per round")->capture_default_str();
    solve->add_option("--time-limit", solve_opts.time_limit_seconds, "Wall-clock limit in seconds")->capture_default_str();
    solve->add_option("--seed", solve_opts.sa.seed, "Annealing seed")->capture_default_str();
    solve->add_option("--out", solve_out, "Solution JSON output path")->required();
    solve->add_flag("--no-timing", solve_no_timing, "Write wall-clock fields as 0");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the benchmark protocol");
    std::string bench_config, bench_out, bench_summary, bench_solutions;
    bool bench_no_timing = false;
    bench->add_option("--config", bench_config, "Benchmark config JSON")->required();
    bench->add_option("--out", bench_out, "Per-instance CSV output path")->required();
    bench->add_option("--summary", bench_summary, "Per-cell summary CSV (default: <out>_summary.csv)");
    bench->add_option("--solutions-dir", bench_solutions, "Directory for solution files of solved rows");
    bench->add_flag("--no-timing", bench_no_timing, "Write wall-clock columns as 0");

    // validate
    auto* val = app.add_subcommand("validate", "Check a solution file against its instance");
    std::string val_map, val_scen, val_solution;
    val->add_option("--map", val_map, "Map file")->required();
    val->add_option("--scen", val_scen, "Scenario file")->required();
    val->add_option("--solution", val_solution, "Solution JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const mrtapf::Instance inst =
                mrtapf::generate_instance(gen_width, gen_height, gen_obstacles, gen_robots, gen_goals, gen_seed);
            const std::string map_path = gen_out + ".map";
            mrtapf::write_text_file(map_path, mrtapf::render_map(inst.map));
            mrtapf::Scenario scen{std::filesystem::path(map_path).filename().string(), inst.starts, inst.goals,
                                  inst.seed};
            mrtapf::write_text_file(gen_out + ".scen", mrtapf::scenario_to_json(scen).dump() + "\n");
            return kExitOk;
        }

        if (*solve) {
            const mrtapf::Instance inst = mrtapf::load_instance(solve_map, solve_scen);
            const mrtapf::SolveOutcome outcome = mrtapf::solve_instance(inst, solve_opts);
            mrtapf::write_text_file(solve_out,
                                    mrtapf::solution_to_json(outcome.solution, outcome.plan, !solve_no_timing).dump(1) +
                                        "\n");
            if (!outcome.report.ok()) {
                std::cerr << "solution failed validation:\n" << outcome.report.to_text();
                return kExitInvalidSolution;
            }
            std::cerr << "flowtime " << outcome.solution.flowtime << ", rounds " << outcome.solution.rounds << '\n';
            return kExitOk;
        }

        if (*bench) {
            const mrtapf::BenchConfig config = mrtapf::bench_config_from_json(mrtapf::read_json_file(bench_config));
            mrtapf::BenchOptions opts;
            opts.threads = mrtapf::bench_threads_from_env();
            opts.with_timing = !bench_no_timing;
            if (!bench_solutions.empty()) opts.solutions_dir = bench_solutions;
            const auto rows = mrtapf::run_bench(config, opts);
            mrtapf::write_text_file(bench_out, render_csv_rows(rows));
            std::ostringstream summary;
            mrtapf::write_summary_csv(summary, mrtapf::summarize(config, rows));
            mrtapf::write_text_file(bench_summary.empty() ? default_summary_path(bench_out) : bench_summary,
                                    summary.str());
            std::cout << summary.str();
            for (const auto& r : rows)
                if (!r.solved) std::cerr << "n=" << r.n << " m=" << r.m << " i=" << r.instance << ": " << r.status << '\n';
            return kExitOk;
        }

        if (*val) {
            const mrtapf::Instance inst = mrtapf::load_instance(val_map, val_scen);
            const mrtapf::json j = mrtapf::read_json_file(val_solution);
            const mrtapf::ValidationReport report =
                mrtapf::validate(inst, mrtapf::solution_from_json(j), mrtapf::plan_from_solution_json(j));
            std::cout << mrtapf::report_to_json(report).dump(1) << '\n';
            return report.ok() ? kExitOk : kExitInfeasible;
        }
    } catch (const mrtapf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
