#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mrtapf/assignment.hpp"
#include "mrtapf/io.hpp"

namespace mrtapf {

struct BenchConfig {
    std::vector<int> robot_counts{5, 10, 20};
    std::vector<int> goal_counts{10, 20, 30, 40};
    int instances_per_cell = 40;
    int map_width = 32;
    int map_height = 32;
    double obstacle_ratio = 0.40;
    double time_limit_seconds = 60.0;
    std::uint64_t seed_base = 0;
    SAParams sa;
    int node_limit = 100'000;
};

BenchConfig bench_config_from_json(const json& j);
json bench_config_to_json(const BenchConfig& config);

/// seed_base + 1'000'000 * n + 10'000 * m + instance: any row can be re-run alone.
std::uint64_t instance_seed(std::uint64_t seed_base, int n, int m, int instance);

struct BenchRow {
    int n = 0;
    int m = 0;
    int instance = 0;
    std::uint64_t seed = 0;
    bool solved = false;
    double sa_seconds = 0.0;
    double recbs_seconds = 0.0;
    double total_seconds = 0.0;
    int flowtime = -1;  // -1 when unsolved
    int rounds = -1;
    std::string status;  // "ok" or the failure message
};

struct BenchOptions {
    int threads = 1;
    std::optional<std::string> solutions_dir;  // solution JSON for every solved row
    bool with_timing = true;                   // false zeroes all wall-clock columns
};

/// Generate, solve and validate one instance of the (n, m) cell.
BenchRow run_bench_instance(const BenchConfig& config, int n, int m, int instance, const BenchOptions& options);

/// Rows in (n, m, instance) order regardless of worker completion order.
std::vector<BenchRow> run_bench(const BenchConfig& config, const BenchOptions& options);

/// Worker count: hardware concurrency capped by MRTAPF_THREADS when set.
int bench_threads_from_env();

inline constexpr const char* kBenchCsvHeader =
    "n,m,instance,seed,solved,sa_seconds,recbs_seconds,total_seconds,flowtime,rounds";

/// Seconds are rounded to microseconds; summaries are computed from these
/// rounded values so they recompute exactly from the CSV.
void write_rows_csv(std::ostream& os, const std::vector<BenchRow>& rows);
std::vector<BenchRow> read_rows_csv(std::istream& is);

struct FiveNumber {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Linear interpolation between closest ranks. Requires a non-empty sample.
FiveNumber five_number_summary(std::vector<double> values);

struct CellSummary {
    int n = 0;
    int m = 0;
    int instances = 0;
    int solved = 0;
    double success_rate = 0.0;
    std::optional<FiveNumber> sa, recbs, total;  // over solved rows
};

std::vector<CellSummary> summarize(const BenchConfig& config, const std::vector<BenchRow>& rows);
void write_summary_csv(std::ostream& os, const std::vector<CellSummary>& cells);

}  // namespace mrtapf
