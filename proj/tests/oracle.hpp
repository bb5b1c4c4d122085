/*
 * Test-only oracles: exhaustive subset enumeration for maximum-weight
 * cliques, random weighted graphs, and hand-built instances/rate matrices.
 * These stay independent of the solver implementations they check.
 */
#pragma once

#include <stdexcept>
#include <vector>

#include "ncsched/channel.hpp"
#include "ncsched/graph.hpp"
#include "ncsched/model.hpp"
#include "ncsched/rng.hpp"

namespace ncsched::testing {

struct EnumeratedClique {
    std::vector<int> vertices;
    double weight = 0.0;
};

// Checks every one of the 2^V vertex subsets. Weight summed in ascending id
// order, matching the solvers' canonical summation.
inline EnumeratedClique enumerate_max_weight_clique(const RaidncGraph& graph) {
    const int count = graph.vertex_count();
    if (count > 24) throw std::invalid_argument("enumeration oracle limited to 24 vertices");
    EnumeratedClique best;
    for (std::uint32_t subset = 0; subset < (1ULL << count); ++subset) {
        bool clique = true;
        for (int i = 0; i < count && clique; ++i) {
            if (!(subset & (1U << i))) continue;
            for (int j = i + 1; j < count && clique; ++j) {
                if (!(subset & (1U << j))) continue;
                if (!graph.adjacent(i, j)) clique = false;
            }
        }
        if (!clique) continue;
        double weight = 0.0;
        for (int i = 0; i < count; ++i)
            if (subset & (1U << i)) weight += graph.vertices[static_cast<std::size_t>(i)].weight_bps;
        if (weight > best.weight) {
            best.weight = weight;
            best.vertices.clear();
            for (int i = 0; i < count; ++i)
                if (subset & (1U << i)) best.vertices.push_back(i);
        }
    }
    return best;
}

// Random weighted graph with the given edge density; weights in (0, 10].
inline RaidncGraph random_graph(Rng& rng, int count, double density) {
    RaidncGraph graph;
    graph.vertices.resize(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        auto& v = graph.vertices[static_cast<std::size_t>(i)];
        v.user = i;
        v.tx = 0;
        v.weight_bps = 10.0 * rng.next_double_open();
        v.rate_bps = v.weight_bps;
    }
    graph.adjacency = AdjacencyBits(count);
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            if (rng.next_double() < density) graph.adjacency.set(i, j);
    return graph;
}

// Instance assembled by hand; trusts the caller on consistency and skips the
// scenario validation that generate_instance applies.
inline Instance manual_instance(const Scenario& scenario,
                                std::vector<std::vector<int>> caches,
                                std::vector<std::vector<int>> has, std::vector<int> wants) {
    Instance instance;
    instance.scenario = scenario;
    instance.kinds = transmitter_kinds(scenario);
    instance.caches.files = std::move(caches);
    instance.side.has = std::move(has);
    instance.side.wants = std::move(wants);
    instance.classes = classify_users(instance.caches, instance.side, instance.kinds);
    return instance;
}

inline RateMatrix manual_rates(int users, int tx, std::vector<double> values) {
    return {users, tx, std::move(values)};
}

// Literal transcription of the power-update right-hand side (projection
// included), evaluated with the scalar sinr/rate helpers instead of the
// kernel path the implementation uses.
inline double ife_update_rhs(const Instance& instance, const ChannelState& channel,
                             const Schedule& schedule, const PowerVector& powers, int tx) {
    const double p_max = instance.scenario.max_power_watts();
    const auto bottleneck_of = [&](int t) {
        const auto& plan = schedule.per_tx[static_cast<std::size_t>(t)];
        int best = plan.targeted_users.front();
        for (const int user : plan.targeted_users) {
            const double a = achievable_rate(instance.scenario, channel, powers, user, t,
                                             instance.classes, instance.kinds);
            const double b = achievable_rate(instance.scenario, channel, powers, best, t,
                                             instance.classes, instance.kinds);
            if (a < b) best = user;
        }
        return best;
    };

    const int own_user = bottleneck_of(tx);
    const double own_sinr = sinr(channel, powers, own_user, tx);
    const double numerator =
        static_cast<double>(
            schedule.per_tx[static_cast<std::size_t>(tx)].targeted_users.size()) *
        own_sinr / (1.0 + own_sinr);
    double denominator = 0.0;
    for (int l = 0; l < static_cast<int>(schedule.per_tx.size()); ++l) {
        if (l == tx || !schedule.per_tx[static_cast<std::size_t>(l)].active()) continue;
        if (powers[static_cast<std::size_t>(l)] == 0.0) continue;  // term limit is zero
        const int u = bottleneck_of(l);
        const double s = sinr(channel, powers, u, l);
        denominator += static_cast<double>(
                           schedule.per_tx[static_cast<std::size_t>(l)].targeted_users.size()) *
                       (s * s / (1.0 + s)) * channel.at(u, tx) /
                       (powers[static_cast<std::size_t>(l)] * channel.at(u, l));
    }
    if (denominator == 0.0) return p_max;
    const double raw = numerator / denominator;
    return raw < 0.0 ? 0.0 : raw > p_max ? p_max : raw;
}

}  // namespace ncsched::testing
