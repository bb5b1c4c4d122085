/*
 * Joint scheduling and power allocation: alternates maximum-weight clique
 * scheduling on the RA-IDNC graph with the fixed-point power iteration until
 * the best-seen throughput stops improving, plus the three reference schemes
 * it is compared against.
 */
#pragma once

#include <vector>

#include "ncsched/channel.hpp"
#include "ncsched/clique.hpp"
#include "ncsched/model.hpp"
#include "ncsched/schedule.hpp"

namespace ncsched {

enum class SchemeKind { Proposed, ClassicalIdnc, Uncoded, RaIdnc };

const char* scheme_name(SchemeKind scheme);

enum class CliqueMode { Auto, Exact, Greedy };

struct SolverConfig {
    int exact_limit = kDefaultExactLimit;
    CliqueMode clique_mode = CliqueMode::Auto;
    double ife_epsilon = 1e-6;
    int ife_max_iterations = 100;
    double outer_tol = 1e-6;
    int outer_max_iterations = 20;
};

struct SolveResult {
    Schedule schedule;
    PowerVector powers;
    double throughput_bps = 0.0;
    int outer_iterations = 0;
    std::vector<double> best_trace;  // best-so-far per outer iteration, non-decreasing
    SolverTag solver = SolverTag::Exact;
};

SolveResult solve_scheme(SchemeKind scheme, const Instance& instance,
                         const ChannelState& channel, const SolverConfig& config);

// Full graph/MWC/power loop starting from P_max on all transmitters.
SolveResult solve_proposed(const Instance& instance, const ChannelState& channel,
                           const SolverConfig& config);

// Same loop on the graph without same-transmitter edges: every transmitter
// serves at most one user per frame.
SolveResult solve_uncoded(const Instance& instance, const ChannelState& channel,
                          const SolverConfig& config);

// Network-layer only: maximize served users, transmit at the minimum rate of
// the scheduled users, powers pinned at P_max.
SolveResult solve_classical_idnc(const Instance& instance, const ChannelState& channel,
                                 const SolverConfig& config);

// One network-wide transmission rate for all transmitters, powers at P_max.
SolveResult solve_ra_idnc(const Instance& instance, const ChannelState& channel,
                          const SolverConfig& config);

}  // namespace ncsched
