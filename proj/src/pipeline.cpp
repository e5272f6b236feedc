#include "mrtapf/pipeline.hpp"

#include <chrono>

namespace mrtapf {

SolveOutcome solve_instance(const Instance& instance, const SolveOptions& options) {
    using Clock = std::chrono::steady_clock;
    const Deadline deadline =
        options.time_limit_seconds > 0.0 ? Deadline::after(options.time_limit_seconds) : Deadline::none();

    const auto t0 = Clock::now();
    const CostMatrix costs = build_cost_matrix(instance);
    const RoutePlan initial = greedy_insertion(costs, instance.num_robots(), instance.num_goals());
    SolveOutcome out;
    out.sa = simulated_annealing(initial, costs, options.sa, deadline);
    out.plan = out.sa.best;
    const double sa_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

    CBSOptions cbs;
    cbs.node_limit = options.node_limit;
    cbs.deadline = deadline;
    out.solution = solve_recurrent(instance, out.plan, cbs);
    out.solution.sa_seconds = sa_seconds;
    out.report = validate(instance, out.solution, out.plan);
    return out;
}

}  // namespace mrtapf
