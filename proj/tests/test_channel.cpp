#include <cmath>

#include "doctest.h"
#include "ncsched/channel.hpp"
#include "ncsched/rng.hpp"

using namespace ncsched;

namespace {

Scenario flat_scenario() {
    Scenario s;
    s.num_d2d = 1;
    s.num_sbs = 1;
    s.num_uav = 1;
    s.num_users = 2;
    s.num_files = 4;
    s.shadowing_enabled = false;
    s.fading_enabled = false;
    return s;
}

// Hand-built channel: cnr values set directly.
ChannelState manual_channel(int users, int tx, const std::vector<double>& cnr) {
    ChannelState channel;
    channel.num_users = users;
    channel.num_tx = tx;
    channel.cnr = cnr;
    return channel;
}

}  // namespace

TEST_CASE("deterministic path loss at one kilometre") {
    CHECK(path_loss_db(1.0) == doctest::Approx(128.1).epsilon(1e-15));

    // One transmitter exactly 1 km from the user, fading and shadowing off:
    // the gain is -128.1 dB on the nose.
    Scenario s = flat_scenario();
    s.fixed_transmitter_positions = {{{0.0, 0.0, 0.0}, {300.0, 0.0, 0.0}, {0.0, 400.0, 100.0}}};
    s.fixed_user_positions = {{{1000.0, 0.0}}, {{500.0, 0.0}}};
    s.num_users = 2;
    const auto placement = place_nodes(s, 1);
    const auto channel = draw_channel(s, placement, 1);
    const double expected = std::pow(10.0, -12.81) / s.noise_power_watts();
    CHECK(channel.at(0, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("equidistant users see equal gains without randomness") {
    Scenario s = flat_scenario();
    s.fixed_transmitter_positions = {{{0.0, 0.0, 0.0}, {5000.0, 0.0, 0.0}, {0.0, 5000.0, 100.0}}};
    s.fixed_user_positions = {{{700.0, 0.0}}, {{-700.0, 0.0}}};
    const auto channel = draw_channel(s, place_nodes(s, 3), 9);
    CHECK(channel.at(0, 0) == channel.at(1, 0));
}

TEST_CASE("co-located nodes are rejected") {
    Scenario s = flat_scenario();
    s.fixed_transmitter_positions = {{{0.0, 0.0, 0.0}, {100.0, 0.0, 0.0}, {0.0, 100.0, 100.0}}};
    s.fixed_user_positions = {{{0.0, 0.0}}, {{50.0, 0.0}}};
    CHECK_THROWS_AS(draw_channel(s, place_nodes(s, 1), 1), std::invalid_argument);
}

TEST_CASE("sinr matches the stated formula") {
    SUBCASE("single transmitter with unit received power") {
        const auto channel = manual_channel(1, 1, {2.0});
        CHECK(sinr(channel, {0.5}, 0, 0) == doctest::Approx(1.0));
    }
    SUBCASE("interference in the denominator") {
        const auto channel = manual_channel(1, 2, {3.0, 1.0});
        CHECK(sinr(channel, {1.0, 1.0}, 0, 0) == doctest::Approx(1.5));
    }
    SUBCASE("zero powers give zero sinr") {
        const auto channel = manual_channel(1, 2, {3.0, 1.0});
        CHECK(sinr(channel, {0.0, 0.0}, 0, 0) == 0.0);
    }
}

TEST_CASE("achievable rate caps cache-miss users at the fronthaul") {
    Scenario s = flat_scenario();
    s.bandwidth_hz = 1.0;
    const auto kinds = transmitter_kinds(s);  // D2D, SBS, UAV

    const auto channel = manual_channel(1, 3, {1.0, 1.0, 1.0});
    const PowerVector powers{1.0, 0.0, 0.0};

    SUBCASE("unit bandwidth and unit sinr give one bit per second") {
        const UserClassification classes{UserClass::CacheHit};
        CHECK(achievable_rate(s, channel, powers, 0, 0, classes, kinds) == doctest::Approx(1.0));
    }
    SUBCASE("binding and non-binding caps") {
        Scenario capped = s;
        capped.bandwidth_hz = 10e6;
        const UserClassification miss{UserClass::CacheMiss};
        const PowerVector sbs_only{0.0, 1e4, 0.0};
        const double wireless = capped.bandwidth_hz * std::log2(1.0 + 1e4);
        REQUIRE(wireless > 10e6);
        capped.fronthaul_capacity_bps = 10e6;
        CHECK(achievable_rate(capped, channel, sbs_only, 0, 1, miss, kinds) ==
              doctest::Approx(10e6));
        capped.fronthaul_capacity_bps = 1e9;
        CHECK(achievable_rate(capped, channel, sbs_only, 0, 1, miss, kinds) ==
              doctest::Approx(wireless));
        // The same link uncapped for a cache-hit user.
        const UserClassification hit{UserClass::CacheHit};
        capped.fronthaul_capacity_bps = 10e6;
        CHECK(achievable_rate(capped, channel, sbs_only, 0, 1, hit, kinds) ==
              doctest::Approx(wireless));
    }
}

TEST_CASE("sinr is monotone in own and interfering powers") {
    Rng rng(2024);
    for (int round = 0; round < 50; ++round) {
        const int num_tx = 2 + static_cast<int>(rng.next_below(4));
        std::vector<double> cnr(static_cast<std::size_t>(num_tx));
        for (auto& g : cnr) g = 0.1 + rng.next_double() * 10.0;
        const auto channel = manual_channel(1, num_tx, cnr);
        PowerVector powers(static_cast<std::size_t>(num_tx));
        for (auto& p : powers) p = 0.1 + rng.next_double();

        const double base = sinr(channel, powers, 0, 0);
        PowerVector raised = powers;
        raised[0] *= 1.5;
        CHECK(sinr(channel, raised, 0, 0) > base);

        PowerVector noisier = powers;
        noisier[1] *= 1.5;
        CHECK(sinr(channel, noisier, 0, 0) < base);
    }
}

TEST_CASE("single transmitter rate is maximized at full power") {
    Scenario s = flat_scenario();
    const auto channel = manual_channel(1, 1, {3.7});
    const UserClassification classes{UserClass::CacheHit};
    const std::vector<TransmitterKind> kinds{TransmitterKind::D2D};
    const double p_max = s.max_power_watts();
    const double at_max = achievable_rate(s, channel, {p_max}, 0, 0, classes, kinds);
    for (int i = 0; i <= 20; ++i) {
        const PowerVector powers{p_max * i / 20.0};
        CHECK(achievable_rate(s, channel, powers, 0, 0, classes, kinds) <= at_max + 1e-9);
    }
}

TEST_CASE("placement is deterministic and respects the geometry") {
    Scenario s;
    s.num_d2d = 3;
    s.num_sbs = 1;
    s.num_uav = 2;
    s.num_users = 200;
    s.cell_radius_m = 900.0;
    s.uav_altitude_m = 120.0;

    const auto a = place_nodes(s, 77);
    const auto b = place_nodes(s, 77);
    CHECK(a.transmitters == b.transmitters);
    CHECK(a.users == b.users);
    CHECK(draw_channel(s, a, 5).cnr == draw_channel(s, a, 5).cnr);

    // Single SBS sits at angle zero on the half-radius ring.
    const auto& sbs = a.transmitters[3];
    CHECK(sbs[0] == doctest::Approx(450.0));
    CHECK(sbs[1] == doctest::Approx(0.0));
    CHECK(sbs[2] == 0.0);

    for (int u = 0; u < 2; ++u) {
        const auto& uav = a.transmitters[static_cast<std::size_t>(4 + u)];
        CHECK(uav[2] == 120.0);
    }
    for (const auto& user : a.users)
        CHECK(std::hypot(user[0], user[1]) <= s.cell_radius_m + 1e-9);
    for (int d = 0; d < 3; ++d) {
        const auto& d2d = a.transmitters[static_cast<std::size_t>(d)];
        CHECK(std::hypot(d2d[0], d2d[1]) <= s.cell_radius_m + 1e-9);
        CHECK(d2d[2] == 0.0);
    }
}

TEST_CASE("bulk rate matrix agrees with the scalar contract path") {
    Scenario s;
    s.num_d2d = 2;
    s.num_sbs = 2;
    s.num_uav = 1;
    s.num_users = 9;
    s.num_files = 10;
    s.rng_seed = 5;
    const auto instance = generate_instance(s);
    const auto placement = place_nodes(s, 5);
    const auto channel = draw_channel(s, placement, 5);

    PowerVector powers(static_cast<std::size_t>(s.num_transmitters()));
    Rng rng(8);
    for (auto& p : powers) p = rng.next_double() * s.max_power_watts();

    const auto matrix = achievable_rate_matrix(instance, channel, powers);
    for (int n = 0; n < s.num_users; ++n) {
        for (int t = 0; t < s.num_transmitters(); ++t) {
            const double reference =
                achievable_rate(s, channel, powers, n, t, instance.classes, instance.kinds);
            CHECK(matrix.at(n, t) ==
                  doctest::Approx(reference).epsilon(1e-9).scale(std::abs(reference) + 1.0));
        }
    }
}
