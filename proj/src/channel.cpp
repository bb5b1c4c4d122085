#include "ncsched/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ncsched/kernels.hpp"
#include "ncsched/rng.hpp"

namespace ncsched {

namespace {

constexpr double kShadowingStdDb = 4.0;

// Regular hexagon, circumradius r, vertex on the +x axis.
bool inside_hexagon(double x, double y, double r) {
    constexpr double sqrt3 = std::numbers::sqrt3;
    return std::abs(y) <= sqrt3 * 0.5 * r && sqrt3 * std::abs(x) + std::abs(y) <= sqrt3 * r;
}

std::array<double, 2> sample_hexagon(Rng& rng, double r) {
    for (;;) {
        const double x = (2.0 * rng.next_double() - 1.0) * r;
        const double y = (2.0 * rng.next_double() - 1.0) * (std::numbers::sqrt3 * 0.5 * r);
        if (inside_hexagon(x, y, r)) return {x, y};
    }
}

}  // namespace

double path_loss_db(double distance_km) {
    return 128.1 + 37.6 * std::log10(distance_km);
}

Placement place_nodes(const Scenario& scenario, std::uint64_t seed) {
    scenario.require_valid();
    Placement placement;

    if (scenario.fixed_transmitter_positions) {
        placement.transmitters = *scenario.fixed_transmitter_positions;
    } else {
        placement.transmitters.resize(static_cast<std::size_t>(scenario.num_transmitters()));
        const double ring_radius = scenario.cell_radius_m / 2.0;
        const int ring_slots = scenario.num_sbs + scenario.num_uav;
        for (int i = 0; i < scenario.num_sbs; ++i) {
            const double angle = 2.0 * std::numbers::pi * i / ring_slots;
            placement.transmitters[static_cast<std::size_t>(scenario.num_d2d + i)] = {
                ring_radius * std::cos(angle), ring_radius * std::sin(angle), 0.0};
        }
        for (int i = 0; i < scenario.num_uav; ++i) {
            const double angle = 2.0 * std::numbers::pi * (scenario.num_sbs + i) / ring_slots;
            placement.transmitters[static_cast<std::size_t>(scenario.num_d2d + scenario.num_sbs +
                                                            i)] = {
                ring_radius * std::cos(angle), ring_radius * std::sin(angle),
                scenario.uav_altitude_m};
        }
    }

    Rng rng(mix_seed(seed, 0x706c6163ULL));  // placement stream
    if (!scenario.fixed_transmitter_positions) {
        for (int i = 0; i < scenario.num_d2d; ++i) {
            const auto p = sample_hexagon(rng, scenario.cell_radius_m);
            placement.transmitters[static_cast<std::size_t>(i)] = {p[0], p[1], 0.0};
        }
    }

    if (scenario.fixed_user_positions) {
        placement.users = *scenario.fixed_user_positions;
    } else {
        placement.users.resize(static_cast<std::size_t>(scenario.num_users));
        for (auto& user : placement.users) user = sample_hexagon(rng, scenario.cell_radius_m);
    }
    return placement;
}

ChannelState draw_channel(const Scenario& scenario, const Placement& placement,
                          std::uint64_t seed) {
    const int num_users = static_cast<int>(placement.users.size());
    const int num_tx = static_cast<int>(placement.transmitters.size());
    const double noise_watts = scenario.noise_power_watts();

    ChannelState channel;
    channel.num_users = num_users;
    channel.num_tx = num_tx;
    channel.cnr.resize(static_cast<std::size_t>(num_users) * num_tx);

    Rng rng(mix_seed(seed, 0x6368616eULL));  // channel stream
    for (int n = 0; n < num_users; ++n) {
        const auto& user = placement.users[static_cast<std::size_t>(n)];
        for (int t = 0; t < num_tx; ++t) {
            const auto& tx = placement.transmitters[static_cast<std::size_t>(t)];
            const double dx = user[0] - tx[0];
            const double dy = user[1] - tx[1];
            const double dz = -tx[2];
            const double d_km = std::sqrt(dx * dx + dy * dy + dz * dz) / 1000.0;
            if (d_km == 0.0)
                throw std::invalid_argument("co-located user/transmitter pair; reject placement");
            double gain_db = -path_loss_db(d_km);
            if (scenario.shadowing_enabled) gain_db += kShadowingStdDb * rng.next_normal();
            if (scenario.fading_enabled) gain_db += 10.0 * std::log10(rng.next_exponential());
            channel.cnr[static_cast<std::size_t>(n) * num_tx + t] =
                std::pow(10.0, gain_db / 10.0) / noise_watts;
        }
    }
    return channel;
}

double sinr(const ChannelState& channel, const PowerVector& powers, int user, int tx) {
    double interference = 0.0;
    for (int m = 0; m < channel.num_tx; ++m) {
        if (m == tx) continue;
        interference += powers[static_cast<std::size_t>(m)] * channel.at(user, m);
    }
    return powers[static_cast<std::size_t>(tx)] * channel.at(user, tx) / (1.0 + interference);
}

double achievable_rate(const Scenario& scenario, const ChannelState& channel,
                       const PowerVector& powers, int user, int tx,
                       const UserClassification& classes,
                       const std::vector<TransmitterKind>& kinds) {
    const double rate =
        scenario.bandwidth_hz * std::log2(1.0 + sinr(channel, powers, user, tx));
    const bool capped = classes[static_cast<std::size_t>(user)] == UserClass::CacheMiss &&
                        kinds[static_cast<std::size_t>(tx)] == TransmitterKind::SBS;
    return capped ? std::min(scenario.fronthaul_capacity_bps, rate) : rate;
}

RateMatrix achievable_rate_matrix(const Instance& instance, const ChannelState& channel,
                                  const PowerVector& powers) {
    RateMatrix matrix;
    matrix.num_users = channel.num_users;
    matrix.num_tx = channel.num_tx;
    matrix.rates.resize(channel.cnr.size());

    std::vector<double> totals(static_cast<std::size_t>(channel.num_users));
    kernels::received_power_totals(channel.cnr.data(), powers.data(), channel.num_users,
                                   channel.num_tx, totals.data());
    kernels::shannon_rate_matrix(channel.cnr.data(), powers.data(), totals.data(),
                                 channel.num_users, channel.num_tx,
                                 instance.scenario.bandwidth_hz, matrix.rates.data());

    const double cap = instance.scenario.fronthaul_capacity_bps;
    for (int n = 0; n < channel.num_users; ++n) {
        if (instance.classes[static_cast<std::size_t>(n)] != UserClass::CacheMiss) continue;
        for (int t = 0; t < channel.num_tx; ++t) {
            if (instance.kinds[static_cast<std::size_t>(t)] != TransmitterKind::SBS) continue;
            auto& rate = matrix.rates[static_cast<std::size_t>(n) * channel.num_tx + t];
            rate = std::min(cap, rate);
        }
    }
    return matrix;
}

}  // namespace ncsched
