#include "mrtapf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "mrtapf/error.hpp"
#include "mrtapf/pipeline.hpp"

namespace mrtapf {

namespace {

double round_micro(double seconds) { return std::round(seconds * 1e6) / 1e6; }

double elapsed(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

BenchConfig bench_config_from_json(const json& j) {
    BenchConfig c;
    try {
        if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "bench config must be a JSON object");
        if (j.contains("robot_counts")) c.robot_counts = j.at("robot_counts").get<std::vector<int>>();
        if (j.contains("goal_counts")) c.goal_counts = j.at("goal_counts").get<std::vector<int>>();
        c.instances_per_cell = j.value("instances_per_cell", c.instances_per_cell);
        c.map_width = j.value("map_width", c.map_width);
        c.map_height = j.value("map_height", c.map_height);
        c.obstacle_ratio = j.value("obstacle_ratio", c.obstacle_ratio);
        c.time_limit_seconds = j.value("time_limit_seconds", c.time_limit_seconds);
        c.seed_base = j.value("seed_base", c.seed_base);
        c.node_limit = j.value("node_limit", c.node_limit);
        if (j.contains("sa")) {
            const json& sa = j.at("sa");
            c.sa.t_initial = sa.value("t_initial", c.sa.t_initial);
            c.sa.max_iter = sa.value("max_iter", c.sa.max_iter);
            c.sa.seed = sa.value("seed", c.sa.seed);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("bad bench config: ") + e.what());
    }
    for (int n : c.robot_counts)
        if (n <= 0) throw Error(ErrorKind::InvalidInput, "robot_counts must be positive");
    for (int m : c.goal_counts)
        if (m <= 0) throw Error(ErrorKind::InvalidInput, "goal_counts must be positive");
    if (c.instances_per_cell < 0) throw Error(ErrorKind::InvalidInput, "instances_per_cell must be non-negative");
    if (!(c.time_limit_seconds > 0.0)) throw Error(ErrorKind::InvalidInput, "time_limit_seconds must be positive");
    if (!(c.sa.t_initial > 0.0) || c.sa.max_iter < 1) throw Error(ErrorKind::InvalidInput, "invalid SA parameters");
    if (c.node_limit < 1) throw Error(ErrorKind::InvalidInput, "node_limit must be positive");
    return c;
}

json bench_config_to_json(const BenchConfig& c) {
    return json{{"robot_counts", c.robot_counts},
                {"goal_counts", c.goal_counts},
                {"instances_per_cell", c.instances_per_cell},
                {"map_width", c.map_width},
                {"map_height", c.map_height},
                {"obstacle_ratio", c.obstacle_ratio},
                {"time_limit_seconds", c.time_limit_seconds},
                {"seed_base", c.seed_base},
                {"node_limit", c.node_limit},
                {"sa", {{"t_initial", c.sa.t_initial}, {"max_iter", c.sa.max_iter}, {"seed", c.sa.seed}}}};
}

std::uint64_t instance_seed(std::uint64_t seed_base, int n, int m, int instance) {
    return seed_base + 1'000'000ull * static_cast<std::uint64_t>(n) + 10'000ull * static_cast<std::uint64_t>(m) +
           static_cast<std::uint64_t>(instance);
}

BenchRow run_bench_instance(const BenchConfig& config, int n, int m, int instance, const BenchOptions& options) {
    using Clock = std::chrono::steady_clock;
    BenchRow row;
    row.n = n;
    row.m = m;
    row.instance = instance;
    row.seed = instance_seed(config.seed_base, n, m, instance);

    double sa_seconds = 0.0, recbs_seconds = 0.0;
    try {
        const Instance inst =
            generate_instance(config.map_width, config.map_height, config.obstacle_ratio, n, m, row.seed);
        const Deadline deadline = Deadline::after(config.time_limit_seconds);

        const auto t0 = Clock::now();
        SAResult sa;
        try {
            const CostMatrix costs = build_cost_matrix(inst);
            const RoutePlan initial = greedy_insertion(costs, n, m);
            SAParams params = config.sa;
            params.seed = config.sa.seed + row.seed;
            sa = simulated_annealing(initial, costs, params, deadline);
        } catch (...) {
            sa_seconds = elapsed(t0);
            throw;
        }
        sa_seconds = elapsed(t0);

        const auto t1 = Clock::now();
        CBSOptions cbs;
        cbs.node_limit = config.node_limit;
        cbs.deadline = deadline;
        TimedSolution sol;
        try {
            sol = solve_recurrent(inst, sa.best, cbs);
        } catch (...) {
            recbs_seconds = elapsed(t1);
            throw;
        }
        recbs_seconds = elapsed(t1);
        sol.sa_seconds = sa_seconds;
        sol.recbs_seconds = recbs_seconds;

        const ValidationReport report = validate(inst, sol, sa.best);
        row.flowtime = sol.flowtime;
        row.rounds = sol.rounds;
        const double total = sa_seconds + recbs_seconds;
        row.solved = report.ok() && total <= config.time_limit_seconds;
        row.status = !report.ok() ? "validation failed" : (row.solved ? "ok" : "time limit exceeded");
        if (row.solved && options.solutions_dir) {
            std::ostringstream name;
            name << *options.solutions_dir << "/n" << n << "_m" << m << "_i" << instance << ".json";
            write_text_file(name.str(), solution_to_json(sol, sa.best, options.with_timing).dump(1) + "\n");
        }
    } catch (const Error& e) {
        row.status = e.what();
    }
    if (options.with_timing) {
        row.sa_seconds = round_micro(sa_seconds);
        row.recbs_seconds = round_micro(recbs_seconds);
        row.total_seconds = round_micro(sa_seconds + recbs_seconds);
    }
    return row;
}

std::vector<BenchRow> run_bench(const BenchConfig& config, const BenchOptions& options) {
    struct Task {
        int n, m, instance;
    };
    std::vector<Task> tasks;
    for (int n : config.robot_counts)
        for (int m : config.goal_counts)
            for (int i = 0; i < config.instances_per_cell; ++i) tasks.push_back({n, m, i});

    std::vector<BenchRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++)
            rows[k] = run_bench_instance(config, tasks[k].n, tasks[k].m, tasks[k].instance, options);
    };
    const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(tasks.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

int bench_threads_from_env() {
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("MRTAPF_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) threads = std::min(threads, cap);
    }
    return threads;
}

void write_rows_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << kBenchCsvHeader << '\n';
    os << std::fixed << std::setprecision(6);
    for (const BenchRow& r : rows) {
        os << r.n << ',' << r.m << ',' << r.instance << ',' << r.seed << ',' << (r.solved ? 1 : 0) << ','
           << r.sa_seconds << ',' << r.recbs_seconds << ',' << r.total_seconds << ',' << r.flowtime << ','
           << r.rounds << '\n';
    }
}

std::vector<BenchRow> read_rows_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kBenchCsvHeader)
        throw Error(ErrorKind::InvalidInput, "bench CSV header mismatch");
    std::vector<BenchRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        BenchRow r;
        int solved = 0;
        if (!(fields >> r.n >> r.m >> r.instance >> r.seed >> solved >> r.sa_seconds >> r.recbs_seconds >>
              r.total_seconds >> r.flowtime >> r.rounds))
            throw Error(ErrorKind::InvalidInput, "malformed bench CSV row");
        r.solved = solved != 0;
        rows.push_back(r);
    }
    return rows;
}

FiveNumber five_number_summary(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorKind::InvalidInput, "five_number_summary of an empty sample");
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

std::vector<CellSummary> summarize(const BenchConfig& config, const std::vector<BenchRow>& rows) {
    std::vector<CellSummary> out;
    for (int n : config.robot_counts) {
        for (int m : config.goal_counts) {
            CellSummary cell;
            cell.n = n;
            cell.m = m;
            std::vector<double> sa, recbs, total;
            for (const BenchRow& r : rows) {
                if (r.n != n || r.m != m) continue;
                ++cell.instances;
                if (!r.solved) continue;
                ++cell.solved;
                sa.push_back(r.sa_seconds);
                recbs.push_back(r.recbs_seconds);
                total.push_back(r.total_seconds);
            }
            if (cell.instances > 0) cell.success_rate = static_cast<double>(cell.solved) / cell.instances;
            if (!sa.empty()) {
                cell.sa = five_number_summary(sa);
                cell.recbs = five_number_summary(recbs);
                cell.total = five_number_summary(total);
            }
            out.push_back(cell);
        }
    }
    return out;
}

void write_summary_csv(std::ostream& os, const std::vector<CellSummary>& cells) {
    os << "n,m,instances,solved,success_rate";
    for (const char* stage : {"sa", "recbs", "total"})
        for (const char* stat : {"min", "q1", "median", "q3", "max"}) os << ',' << stage << '_' << stat;
    os << '\n' << std::fixed << std::setprecision(6);
    for (const CellSummary& c : cells) {
        os << c.n << ',' << c.m << ',' << c.instances << ',' << c.solved << ',' << c.success_rate;
        for (const auto* stats : {&c.sa, &c.recbs, &c.total}) {
            if (*stats)
                os << ',' << (*stats)->min << ',' << (*stats)->q1 << ',' << (*stats)->median << ',' << (*stats)->q3
                   << ',' << (*stats)->max;
            else
                os << ",,,,,";
        }
        os << '\n';
    }
}

}  // namespace mrtapf
