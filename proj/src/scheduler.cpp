#include "ncsched/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

#include "ncsched/graph.hpp"
#include "ncsched/power.hpp"
#include "ncsched/validate.hpp"

namespace ncsched {

namespace {

CliqueSolution run_solver(const RaidncGraph& graph, const SolverConfig& config,
                          bool& used_greedy) {
    const bool fits = graph.vertex_count() <= config.exact_limit;
    const bool exact = config.clique_mode == CliqueMode::Exact ||
                       (config.clique_mode == CliqueMode::Auto && fits);
    if (exact) return solve_exact(graph, std::max(config.exact_limit, graph.vertex_count()));
    used_greedy = true;
    // The plain max-weight greedy never forms coded groups on this graph
    // family; run both heuristics and keep the heavier clique.
    CliqueSolution flat = solve_greedy(graph);
    CliqueSolution grouped = solve_group_greedy(graph);
    return grouped.weight > flat.weight ? grouped : flat;
}

void check_emitted(const Instance& instance, const RateMatrix& rates,
                   const Schedule& schedule) {
    if (!validate_schedule(instance, rates, schedule).all())
        throw std::logic_error("emitted schedule failed the validity checks");
}

// Re-derive each transmitter's adopted rate as the lowest achievable rate of
// its targeted users at the final powers.
void adopt_bottleneck_rates(Schedule& schedule, const RateMatrix& rates) {
    for (int t = 0; t < static_cast<int>(schedule.per_tx.size()); ++t) {
        auto& plan = schedule.per_tx[static_cast<std::size_t>(t)];
        if (!plan.active()) continue;
        double lowest = rates.at(plan.targeted_users.front(), t);
        for (const int user : plan.targeted_users) lowest = std::min(lowest, rates.at(user, t));
        plan.adopted_rate_bps = lowest;
    }
}

// Shared loop for the schemes that optimize power (Proposed and Uncoded).
SolveResult solve_with_power_loop(GraphMode mode, const Instance& instance,
                                  const ChannelState& channel, const SolverConfig& config) {
    const int num_tx = instance.scenario.num_transmitters();
    const double p_max = instance.scenario.max_power_watts();

    SolveResult result;
    result.powers.assign(static_cast<std::size_t>(num_tx), p_max);
    result.schedule.per_tx.resize(static_cast<std::size_t>(num_tx));

    PowerVector powers(static_cast<std::size_t>(num_tx), p_max);
    bool used_greedy = false;
    double previous_best = 0.0;

    for (int outer = 1; outer <= config.outer_max_iterations; ++outer) {
        result.outer_iterations = outer;
        const RateMatrix rates = achievable_rate_matrix(instance, channel, powers);
        const RaidncGraph graph = build_graph(instance, rates, mode);
        const CliqueSolution clique = run_solver(graph, config, used_greedy);
        Schedule schedule = schedule_from_clique(clique.vertices, graph, num_tx);
        check_emitted(instance, rates, schedule);

        const PowerIterationReport report =
            run_ife(instance, channel, schedule, powers, config.ife_epsilon,
                    config.ife_max_iterations);
        if (report.best_objective_bps > result.throughput_bps) {
            result.schedule = std::move(schedule);
            result.powers = report.best_powers;
            result.throughput_bps = report.best_objective_bps;
        }
        result.best_trace.push_back(result.throughput_bps);

        if (outer > 1) {
            const double improvement = result.throughput_bps - previous_best;
            if (previous_best > 0.0 && improvement < config.outer_tol * previous_best) break;
            if (previous_best == 0.0 && result.throughput_bps == 0.0) break;
        }
        previous_best = result.throughput_bps;
        // Continue the alternation from the converged iterate; the tracked
        // best above is what the caller gets. Restarting from the best-seen
        // point would pin the loop to the initial all-P_max allocation.
        powers = report.last_iterate;
    }

    const RateMatrix final_rates = achievable_rate_matrix(instance, channel, result.powers);
    adopt_bottleneck_rates(result.schedule, final_rates);
    result.throughput_bps = objective_from_rates(final_rates, result.schedule);
    check_emitted(instance, final_rates, result.schedule);
    result.solver = used_greedy ? SolverTag::Greedy : SolverTag::Exact;
    return result;
}

}  // namespace

const char* scheme_name(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::Proposed: return "proposed";
        case SchemeKind::ClassicalIdnc: return "classical_idnc";
        case SchemeKind::Uncoded: return "uncoded";
        case SchemeKind::RaIdnc: return "ra_idnc";
    }
    return "unknown";
}

SolveResult solve_proposed(const Instance& instance, const ChannelState& channel,
                           const SolverConfig& config) {
    return solve_with_power_loop(GraphMode::Proposed, instance, channel, config);
}

SolveResult solve_uncoded(const Instance& instance, const ChannelState& channel,
                          const SolverConfig& config) {
    return solve_with_power_loop(GraphMode::Uncoded, instance, channel, config);
}

SolveResult solve_classical_idnc(const Instance& instance, const ChannelState& channel,
                                 const SolverConfig& config) {
    const int num_tx = instance.scenario.num_transmitters();
    SolveResult result;
    result.powers.assign(static_cast<std::size_t>(num_tx),
                         instance.scenario.max_power_watts());
    result.outer_iterations = 1;

    const RateMatrix rates = achievable_rate_matrix(instance, channel, result.powers);
    const RaidncGraph graph = build_graph(instance, rates, GraphMode::Classical);
    bool used_greedy = false;
    const CliqueSolution clique = run_solver(graph, config, used_greedy);
    result.schedule = schedule_from_clique(clique.vertices, graph, num_tx);
    adopt_bottleneck_rates(result.schedule, rates);
    check_emitted(instance, rates, result.schedule);
    result.throughput_bps = objective_from_rates(rates, result.schedule);
    result.best_trace.push_back(result.throughput_bps);
    result.solver = used_greedy ? SolverTag::Greedy : SolverTag::Exact;
    return result;
}

SolveResult solve_ra_idnc(const Instance& instance, const ChannelState& channel,
                          const SolverConfig& config) {
    const int num_tx = instance.scenario.num_transmitters();
    SolveResult result;
    result.powers.assign(static_cast<std::size_t>(num_tx),
                         instance.scenario.max_power_watts());
    result.outer_iterations = 1;
    result.schedule.per_tx.resize(static_cast<std::size_t>(num_tx));

    const RateMatrix rates = achievable_rate_matrix(instance, channel, result.powers);

    // One shared rate for the whole network: every clique of the fully
    // rate-constrained graph lives at a single rate level, so the MWC is the
    // best level-wise MWC over the pooled candidate rates.
    std::vector<double> pool = rates.rates;
    std::sort(pool.begin(), pool.end(), std::greater<>());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    bool used_greedy = false;
    double best_weight = 0.0;
    double best_rate = 0.0;
    std::vector<int> best_clique;
    for (const double rate : pool) {
        if (rate <= 0.0) break;
        const RaidncGraph graph = build_fixed_rate_graph(instance, rates, rate);
        if (graph.vertex_count() == 0) continue;
        const CliqueSolution clique = run_solver(graph, config, used_greedy);
        if (clique.weight > best_weight) {
            best_weight = clique.weight;
            best_rate = rate;
            best_clique = clique.vertices;
        }
    }

    if (best_rate > 0.0) {
        const RaidncGraph graph = build_fixed_rate_graph(instance, rates, best_rate);
        result.schedule = schedule_from_clique(best_clique, graph, num_tx);
    }
    check_emitted(instance, rates, result.schedule);
    // The network rate is the adopted rate everywhere; throughput is what the
    // schedule carries at that rate, not the per-transmitter bottleneck sum.
    result.throughput_bps = result.schedule.carried_throughput_bps();
    result.best_trace.push_back(result.throughput_bps);
    result.solver = used_greedy ? SolverTag::Greedy : SolverTag::Exact;
    return result;
}

SolveResult solve_scheme(SchemeKind scheme, const Instance& instance,
                         const ChannelState& channel, const SolverConfig& config) {
    switch (scheme) {
        case SchemeKind::Proposed: return solve_proposed(instance, channel, config);
        case SchemeKind::ClassicalIdnc: return solve_classical_idnc(instance, channel, config);
        case SchemeKind::Uncoded: return solve_uncoded(instance, channel, config);
        case SchemeKind::RaIdnc: return solve_ra_idnc(instance, channel, config);
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace ncsched
