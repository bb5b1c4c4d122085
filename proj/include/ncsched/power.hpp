/*
 * Transmit-power allocation for a fixed schedule. The objective is the
 * carried sum-throughput sum_t |tau_t| * min_{n in tau_t} R_{n,t}; setting
 * its gradient to zero yields a fixed-point power update that is iterated
 * until the powers stop moving (iterative function evaluation).
 */
#pragma once

#include <iosfwd>
#include <vector>

#include "ncsched/channel.hpp"
#include "ncsched/model.hpp"
#include "ncsched/schedule.hpp"

namespace ncsched {

struct PowerIterationReport {
    // Trace point with the highest objective; min-rate objectives can
    // oscillate under the raw iteration, so the best-so-far point is what
    // the outer algorithm consumes.
    PowerVector best_powers;
    double best_objective_bps = 0.0;
    // Iterate at which the stop criterion fired; this is the fixed point
    // stationarity checks evaluate.
    PowerVector last_iterate;
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;           // [0] is the initial point
    std::vector<PowerVector> power_trace;          // aligned with the trace
};

// sum_t |tau_t| * min_{n in tau_t} achievable_rate(n, t); silent
// transmitters contribute nothing.
double objective(const Instance& instance, const ChannelState& channel,
                 const PowerVector& powers, const Schedule& schedule);

double objective_from_rates(const RateMatrix& rates, const Schedule& schedule);

// Targeted user with the lowest achievable rate at tx; ties toward the
// smaller user id. Throws when the transmitter targets nobody.
int bottleneck_user(const Schedule& schedule, const RateMatrix& rates, int tx);

// One simultaneous (Jacobi) fixed-point update, clamped to [0, P_max].
// Silent transmitters drop to zero power. A transmitter whose bottleneck
// link is saturated by the fronthaul cap gains nothing from extra power, so
// it descends to the smallest power that still carries the capped rate and
// contributes no interference-penalty term to the other updates.
PowerVector power_update_step(const Instance& instance, const ChannelState& channel,
                              const Schedule& schedule, const PowerVector& powers);

PowerIterationReport run_ife(const Instance& instance, const ChannelState& channel,
                             const Schedule& schedule, const PowerVector& initial_powers,
                             double epsilon, int max_iterations);

// Delimited text dump (iteration, per-transmitter powers, objective).
void write_power_trace(std::ostream& out, const PowerIterationReport& report);

}  // namespace ncsched
