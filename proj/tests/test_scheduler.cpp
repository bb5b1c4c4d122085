#include <cmath>

#include "doctest.h"
#include "ncsched/graph.hpp"
#include "ncsched/power.hpp"
#include "ncsched/scheduler.hpp"
#include "ncsched/validate.hpp"
#include "oracle.hpp"

using namespace ncsched;
using namespace ncsched::testing;

namespace {

Scenario random_small_scenario(std::uint64_t seed) {
    Scenario s;
    s.num_d2d = 2;
    s.num_sbs = 1;
    s.num_uav = 1;
    s.num_users = 5;
    s.num_files = 6;
    s.caching_ratio = 0.5;
    s.side_info_ratio = 0.34;
    s.fronthaul_capacity_bps = 10e6;
    s.rng_seed = seed;
    return s;
}

struct Realization {
    Instance instance;
    ChannelState channel;
};

Realization realize(const Scenario& s, std::uint64_t seed) {
    return {generate_instance(s), draw_channel(s, place_nodes(s, seed), seed)};
}

// Channel with negligible cross-link gains; caps[i] is user i's rate at
// transmitter i when it transmits alone at P_max (bandwidth 1 Hz).
ChannelState diagonal_channel(const Scenario& s, const std::vector<double>& caps) {
    ChannelState channel;
    channel.num_users = static_cast<int>(caps.size());
    channel.num_tx = s.num_transmitters();
    channel.cnr.assign(static_cast<std::size_t>(channel.num_users) * channel.num_tx, 1e-18);
    for (int n = 0; n < channel.num_users; ++n)
        channel.cnr[static_cast<std::size_t>(n) * channel.num_tx + n] =
            (std::exp2(caps[static_cast<std::size_t>(n)]) - 1.0) / s.max_power_watts();
    return channel;
}

}  // namespace

TEST_CASE("a lone cached user is served at capacity and full power") {
    Scenario s;
    s.num_d2d = 1;
    s.num_sbs = 1;
    s.num_uav = 1;
    s.num_users = 1;
    s.num_files = 2;
    s.bandwidth_hz = 1.0;
    const auto instance = manual_instance(s, {{0}, {}, {}}, {{}}, {0});

    ChannelState channel;
    channel.num_users = 1;
    channel.num_tx = 3;
    channel.cnr = {40.0 / s.max_power_watts(), 1e-18, 1e-18};

    const auto result = solve_proposed(instance, channel, {});
    CHECK(result.powers[0] == s.max_power_watts());
    CHECK(result.schedule.per_tx[0].targeted_users == std::vector<int>{0});
    const PowerVector final_powers = result.powers;
    const double capacity = achievable_rate(s, channel, final_powers, 0, 0, instance.classes,
                                            instance.kinds);
    CHECK(result.throughput_bps == doctest::Approx(capacity).epsilon(1e-9));
    CHECK(result.throughput_bps == doctest::Approx(std::log2(41.0)).epsilon(1e-6));
}

TEST_CASE("proposed never falls below its own first clique at full power") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto [instance, channel] = realize(random_small_scenario(seed), seed);
        SolverConfig config;
        config.clique_mode = CliqueMode::Exact;
        config.exact_limit = 100;

        const PowerVector p_max(static_cast<std::size_t>(4),
                                instance.scenario.max_power_watts());
        const auto rates = achievable_rate_matrix(instance, channel, p_max);
        const auto graph = build_graph(instance, rates);
        if (graph.vertex_count() > 60) continue;
        const auto clique = solve_exact(graph, graph.vertex_count());
        const auto initial_schedule = schedule_from_clique(clique.vertices, graph, 4);
        const double at_pmax = objective(instance, channel, p_max, initial_schedule);

        const auto result = solve_proposed(instance, channel, config);
        CHECK(result.throughput_bps >= at_pmax * (1.0 - 1e-12));

        // Best-so-far trace never decreases.
        for (std::size_t k = 1; k < result.best_trace.size(); ++k)
            CHECK(result.best_trace[k] >= result.best_trace[k - 1]);
    }
}

TEST_CASE("uncoded serves at most one user per transmitter") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        Scenario s = random_small_scenario(seed);
        s.num_users = 8;
        const auto [instance, channel] = realize(s, seed);
        const auto result = solve_uncoded(instance, channel, {});
        for (const auto& plan : result.schedule.per_tx)
            CHECK(plan.targeted_users.size() <= 1);
    }
}

TEST_CASE("coding opportunities never hurt the clique weight at equal powers") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto [instance, channel] = realize(random_small_scenario(seed), seed);
        const PowerVector p_max(static_cast<std::size_t>(4),
                                instance.scenario.max_power_watts());
        const auto rates = achievable_rate_matrix(instance, channel, p_max);
        const auto proposed = build_graph(instance, rates, GraphMode::Proposed);
        const auto uncoded = build_graph(instance, rates, GraphMode::Uncoded);
        if (proposed.vertex_count() > 60) continue;
        const double w_proposed = solve_exact(proposed, proposed.vertex_count()).weight;
        const double w_uncoded = solve_exact(uncoded, uncoded.vertex_count()).weight;
        CHECK(w_proposed >= w_uncoded - 1e-9);

        const auto result_ra = solve_ra_idnc(instance, channel, {});
        CHECK(result_ra.throughput_bps <= w_proposed * (1.0 + 1e-12));
    }
}

TEST_CASE("classical idnc serves everyone at the worst rate") {
    Scenario s;
    s.num_d2d = 1;
    s.num_sbs = 1;
    s.num_uav = 1;
    s.num_files = 4;
    s.bandwidth_hz = 1.0;

    SUBCASE("three users wanting the same file") {
        s.num_users = 3;
        const auto instance = manual_instance(s, {{0}, {}, {}}, {{1}, {2}, {3}}, {0, 0, 0});
        ChannelState channel;
        channel.num_users = 3;
        channel.num_tx = 3;
        const double p_max = s.max_power_watts();
        channel.cnr = {(std::exp2(5.0) - 1.0) / p_max, 1e-18, 1e-18,
                       (std::exp2(3.0) - 1.0) / p_max, 1e-18, 1e-18,
                       (std::exp2(2.0) - 1.0) / p_max, 1e-18, 1e-18};

        const auto result = solve_classical_idnc(instance, channel, {});
        CHECK(result.schedule.per_tx[0].targeted_users == std::vector<int>{0, 1, 2});
        CHECK(result.schedule.per_tx[0].adopted_rate_bps == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(result.throughput_bps == doctest::Approx(6.0).epsilon(1e-9));
    }
    SUBCASE("one slow user drags the whole transmitter") {
        s.num_users = 2;
        const auto instance = manual_instance(s, {{0, 1}, {}, {}}, {{1}, {0}}, {0, 1});
        ChannelState channel;
        channel.num_users = 2;
        channel.num_tx = 3;
        const double p_max = s.max_power_watts();
        channel.cnr = {(std::exp2(10.0) - 1.0) / p_max, 1e-18, 1e-18,
                       (std::exp2(1.0) - 1.0) / p_max, 1e-18, 1e-18};
        const auto result = solve_classical_idnc(instance, channel, {});
        CHECK(result.throughput_bps == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("a single user with one usable link matches uncoded at full power") {
        s.num_users = 1;
        const auto instance = manual_instance(s, {{0}, {}, {}}, {{}}, {0});
        ChannelState channel;
        channel.num_users = 1;
        channel.num_tx = 3;
        channel.cnr = {(std::exp2(4.0) - 1.0) / s.max_power_watts(), 1e-18, 1e-18};
        const auto classical = solve_classical_idnc(instance, channel, {});
        const auto uncoded = solve_uncoded(instance, channel, {});
        CHECK(classical.throughput_bps ==
              doctest::Approx(uncoded.throughput_bps).epsilon(1e-6));
    }
}

TEST_CASE("the network-wide rate scheme trades rate against multiplexing") {
    Scenario s;
    s.num_d2d = 2;
    s.num_sbs = 1;
    s.num_uav = 1;
    s.num_users = 2;
    s.num_files = 4;
    s.bandwidth_hz = 1.0;
    const auto instance = manual_instance(s, {{0}, {1}, {}, {}}, {{1}, {0}}, {0, 1});

    SUBCASE("a fast lone link beats two slow ones") {
        // Capacities 4.39 and 2.07: max(4.39, 2 * 2.07) = 4.39.
        const auto channel = diagonal_channel(s, {4.39, 2.07});
        const auto result = solve_ra_idnc(instance, channel, {});
        CHECK(result.throughput_bps == doctest::Approx(4.39).epsilon(1e-6));
        CHECK(result.schedule.num_targeted() == 1);
    }
    SUBCASE("two moderate links outweigh one fast link") {
        // Capacities 4 and 3: both transmit at the network rate 3.
        const auto channel = diagonal_channel(s, {4.0, 3.0});
        const auto result = solve_ra_idnc(instance, channel, {});
        CHECK(result.throughput_bps == doctest::Approx(6.0).epsilon(1e-6));
        REQUIRE(result.schedule.num_targeted() == 2);
        CHECK(result.schedule.per_tx[0].adopted_rate_bps ==
              result.schedule.per_tx[1].adopted_rate_bps);
        // The fast user carries the slow user's rate, not its own capacity.
        CHECK(result.schedule.per_tx[0].adopted_rate_bps == doctest::Approx(3.0).epsilon(1e-6));
    }
}

TEST_CASE("per-level decomposition equals the monolithic equal-rate graph") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Scenario s = random_small_scenario(seed);
        s.num_users = 3;
        s.num_files = 4;
        const auto [instance, channel] = realize(s, seed);
        const PowerVector p_max(4, s.max_power_watts());
        const auto rates = achievable_rate_matrix(instance, channel, p_max);

        // Test-side construction of the full union graph over the pooled
        // rate set, with the equal-rate condition on every pair.
        std::vector<GraphVertex> vertices;
        std::vector<double> pool = rates.rates;
        std::sort(pool.begin(), pool.end(), std::greater<>());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        for (int t = 0; t < 4; ++t) {
            for (int n = 0; n < s.num_users; ++n) {
                const int wanted = instance.side.wants[static_cast<std::size_t>(n)];
                const auto& cache = instance.caches.files[static_cast<std::size_t>(t)];
                const bool cached = std::binary_search(cache.begin(), cache.end(), wanted);
                const bool fronthaul =
                    instance.classes[static_cast<std::size_t>(n)] == UserClass::CacheMiss &&
                    instance.kinds[static_cast<std::size_t>(t)] == TransmitterKind::SBS;
                if (!cached && !fronthaul) continue;
                for (const double r : pool) {
                    if (r <= 0.0 || r > rates.at(n, t)) continue;
                    vertices.push_back({n, wanted, t, cached ? 1 : 2, r, r});
                }
            }
        }
        if (vertices.size() > 22) continue;

        RaidncGraph full;
        full.vertices = vertices;
        full.adjacency = AdjacencyBits(static_cast<int>(vertices.size()));
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < vertices.size(); ++j) {
                const auto& a = vertices[i];
                const auto& b = vertices[j];
                if (a.user == b.user || a.rate_bps != b.rate_bps) continue;
                if (a.tx != b.tx) {
                    full.adjacency.set(static_cast<int>(i), static_cast<int>(j));
                    continue;
                }
                const auto& has_a = instance.side.has[static_cast<std::size_t>(a.user)];
                const auto& has_b = instance.side.has[static_cast<std::size_t>(b.user)];
                const bool compat =
                    a.file == b.file ||
                    (std::binary_search(has_b.begin(), has_b.end(), a.file) &&
                     std::binary_search(has_a.begin(), has_a.end(), b.file));
                if (compat) full.adjacency.set(static_cast<int>(i), static_cast<int>(j));
            }
        }

        const auto oracle = enumerate_max_weight_clique(full);
        const auto result = solve_ra_idnc(instance, channel, {});
        CHECK(result.throughput_bps == doctest::Approx(oracle.weight).epsilon(1e-12));
    }
}

TEST_CASE("single-user instances make coding irrelevant") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Scenario s = random_small_scenario(seed);
        s.num_users = 1;
        const auto [instance, channel] = realize(s, seed);
        const auto proposed = solve_proposed(instance, channel, {});
        const auto uncoded = solve_uncoded(instance, channel, {});
        CHECK(proposed.throughput_bps == uncoded.throughput_bps);
        CHECK(proposed.powers == uncoded.powers);
    }
}

TEST_CASE("every scheme emits schedules that pass the validity suite") {
    const SchemeKind schemes[] = {SchemeKind::Proposed, SchemeKind::ClassicalIdnc,
                                  SchemeKind::Uncoded, SchemeKind::RaIdnc};
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto [instance, channel] = realize(random_small_scenario(seed), seed);
        for (const auto scheme : schemes) {
            const auto result = solve_scheme(scheme, instance, channel, {});
            const auto rates = achievable_rate_matrix(instance, channel, result.powers);
            const auto validity = validate_schedule(instance, rates, result.schedule);
            CHECK(validity.all());
            CHECK(result.throughput_bps >= 0.0);
        }
    }
}

TEST_CASE("solving twice gives identical results") {
    const auto [instance, channel] = realize(random_small_scenario(3), 3);
    for (const auto scheme : {SchemeKind::Proposed, SchemeKind::ClassicalIdnc,
                              SchemeKind::Uncoded, SchemeKind::RaIdnc}) {
        const auto a = solve_scheme(scheme, instance, channel, {});
        const auto b = solve_scheme(scheme, instance, channel, {});
        CHECK(a.throughput_bps == b.throughput_bps);
        CHECK(a.powers == b.powers);
        CHECK(a.outer_iterations == b.outer_iterations);
        CHECK(a.best_trace == b.best_trace);
    }
}
