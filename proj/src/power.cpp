#include "ncsched/power.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ncsched/kernels.hpp"

namespace ncsched {

namespace {

struct ActiveTransmitter {
    int tx;
    int size;              // |tau_t|
    int bottleneck;        // user id
    double sinr;           // bottleneck SINR at the current powers
    double interference;   // 1 + interference at the bottleneck user
    bool cap_bound;        // fronthaul cap binding at the bottleneck link
};

std::vector<ActiveTransmitter> active_state(const Instance& instance,
                                            const ChannelState& channel,
                                            const Schedule& schedule,
                                            const PowerVector& powers,
                                            const RateMatrix& rates,
                                            const std::vector<double>& totals) {
    std::vector<ActiveTransmitter> active;
    for (int t = 0; t < static_cast<int>(schedule.per_tx.size()); ++t) {
        const auto& plan = schedule.per_tx[static_cast<std::size_t>(t)];
        if (!plan.active()) continue;
        const int user = bottleneck_user(schedule, rates, t);
        const double own = powers[static_cast<std::size_t>(t)] * channel.at(user, t);
        const double denom = 1.0 + std::max(totals[static_cast<std::size_t>(user)] - own, 0.0);
        const double sinr = own / denom;
        const double shannon = instance.scenario.bandwidth_hz * std::log2(1.0 + sinr);
        const bool capped =
            instance.classes[static_cast<std::size_t>(user)] == UserClass::CacheMiss &&
            instance.kinds[static_cast<std::size_t>(t)] == TransmitterKind::SBS &&
            shannon >= instance.scenario.fronthaul_capacity_bps;
        active.push_back({t, static_cast<int>(plan.targeted_users.size()), user, sinr, denom,
                          capped});
    }
    return active;
}

}  // namespace

double objective_from_rates(const RateMatrix& rates, const Schedule& schedule) {
    double total = 0.0;
    for (int t = 0; t < static_cast<int>(schedule.per_tx.size()); ++t) {
        const auto& plan = schedule.per_tx[static_cast<std::size_t>(t)];
        if (!plan.active()) continue;
        double lowest = rates.at(plan.targeted_users.front(), t);
        for (const int user : plan.targeted_users) lowest = std::min(lowest, rates.at(user, t));
        total += static_cast<double>(plan.targeted_users.size()) * lowest;
    }
    return total;
}

double objective(const Instance& instance, const ChannelState& channel,
                 const PowerVector& powers, const Schedule& schedule) {
    return objective_from_rates(achievable_rate_matrix(instance, channel, powers), schedule);
}

int bottleneck_user(const Schedule& schedule, const RateMatrix& rates, int tx) {
    const auto& plan = schedule.per_tx[static_cast<std::size_t>(tx)];
    if (!plan.active()) throw std::invalid_argument("bottleneck_user: transmitter is silent");
    int best = plan.targeted_users.front();
    for (const int user : plan.targeted_users)
        if (rates.at(user, tx) < rates.at(best, tx)) best = user;
    return best;
}

PowerVector power_update_step(const Instance& instance, const ChannelState& channel,
                              const Schedule& schedule, const PowerVector& powers) {
    const double p_max = instance.scenario.max_power_watts();
    const RateMatrix rates = achievable_rate_matrix(instance, channel, powers);
    std::vector<double> totals(static_cast<std::size_t>(channel.num_users));
    kernels::received_power_totals(channel.cnr.data(), powers.data(), channel.num_users,
                                   channel.num_tx, totals.data());
    const auto active = active_state(instance, channel, schedule, powers, rates, totals);

    PowerVector next(powers.size(), 0.0);
    for (const auto& self : active) {
        if (self.cap_bound) {
            // Power beyond the fronthaul cap buys nothing. If some other
            // served link is interference-limited, descend to the smallest
            // power that still sustains the capped rate; with nobody to
            // protect, hold (reducing power would only shrink this
            // transmitter's other user capacities in the next outer round).
            bool someone_benefits = false;
            for (const auto& other : active)
                someone_benefits |= other.tx != self.tx && !other.cap_bound;
            if (!someone_benefits) {
                next[static_cast<std::size_t>(self.tx)] =
                    powers[static_cast<std::size_t>(self.tx)];
                continue;
            }
            const double needed_sinr =
                std::exp2(instance.scenario.fronthaul_capacity_bps /
                          instance.scenario.bandwidth_hz) -
                1.0;
            const double gain = channel.at(self.bottleneck, self.tx);
            next[static_cast<std::size_t>(self.tx)] =
                std::clamp(needed_sinr * self.interference / gain, 0.0, p_max);
            continue;
        }
        const double numerator = self.size * self.sinr / (1.0 + self.sinr);
        // sum over the other served transmitters of
        //   |tau_l| * SINR_l^2/(1+SINR_l) * gamma[u_l][t] / (P_l gamma[u_l][l]),
        // written with SINR_l/P_l expanded so zero-power transmitters are
        // handled without a 0/0.
        double denominator = 0.0;
        for (const auto& other : active) {
            if (other.tx == self.tx || other.cap_bound) continue;
            denominator += other.size * (other.sinr / (1.0 + other.sinr)) *
                           channel.at(other.bottleneck, self.tx) / other.interference;
        }
        next[static_cast<std::size_t>(self.tx)] =
            denominator == 0.0 ? p_max : std::clamp(numerator / denominator, 0.0, p_max);
    }
    return next;
}

PowerIterationReport run_ife(const Instance& instance, const ChannelState& channel,
                             const Schedule& schedule, const PowerVector& initial_powers,
                             double epsilon, int max_iterations) {
    if (epsilon <= 0.0) throw std::invalid_argument("run_ife: epsilon must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("run_ife: max_iterations must be >= 1");

    const double p_max = instance.scenario.max_power_watts();
    PowerIterationReport report;
    PowerVector current = initial_powers;

    const auto evaluate = [&](const PowerVector& powers) {
        const double value = objective(instance, channel, powers, schedule);
        report.objective_trace.push_back(value);
        report.power_trace.push_back(powers);
        if (report.power_trace.size() == 1 || value > report.best_objective_bps) {
            report.best_objective_bps = value;
            report.best_powers = powers;
        }
    };

    evaluate(current);
    while (report.iterations < max_iterations) {
        const PowerVector next = power_update_step(instance, channel, schedule, current);
        double step = 0.0;
        for (std::size_t t = 0; t < next.size(); ++t)
            step = std::max(step, std::abs(next[t] - current[t]));
        current = next;
        ++report.iterations;
        evaluate(current);
        if (step < epsilon * p_max) {
            report.converged = true;
            break;
        }
    }
    report.last_iterate = current;
    return report;
}

void write_power_trace(std::ostream& out, const PowerIterationReport& report) {
    out << "iteration";
    if (!report.power_trace.empty())
        for (std::size_t t = 0; t < report.power_trace.front().size(); ++t)
            out << "\tpower_" << t << "_w";
    out << "\tobjective_bps\n";
    for (std::size_t k = 0; k < report.power_trace.size(); ++k) {
        out << k;
        for (const double p : report.power_trace[k]) out << '\t' << p;
        out << '\t' << report.objective_trace[k] << '\n';
    }
}

}  // namespace ncsched
