#pragma once

#include "mrtapf/assignment.hpp"
#include "mrtapf/recurrent_cbs.hpp"
#include "mrtapf/validation.hpp"

namespace mrtapf {

struct SolveOptions {
    SAParams sa;
    int node_limit = 100'000;
    double time_limit_seconds = 0.0;  // <= 0 disables the deadline
};

struct SolveOutcome {
    RoutePlan plan;
    SAResult sa;
    TimedSolution solution;
    ValidationReport report;
};

/// Cost matrix, greedy insertion, annealing, recurrent CBS, then validation.
/// sa_seconds covers the whole assignment stage (matrix, greedy, annealing).
/// Errors from any stage propagate as mrtapf::Error.
SolveOutcome solve_instance(const Instance& instance, const SolveOptions& options);

}  // namespace mrtapf
