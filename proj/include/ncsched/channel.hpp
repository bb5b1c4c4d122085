/*
 * Node placement, channel realizations and rate computation.
 *
 * The CNR matrix stores each link gain divided by the total noise power, so
 * SINR(n, t) = P_t * cnr[n][t] / (1 + sum_{m != t} P_m * cnr[n][m]).
 * Cache-miss users served by an SBS are additionally capped by the fronthaul
 * capacity.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ncsched/model.hpp"

namespace ncsched {

struct Placement {
    std::vector<std::array<double, 3>> transmitters;  // x, y, z in metres
    std::vector<std::array<double, 2>> users;         // ground level
};

// Channel-gain-to-noise ratios, row-major users x transmitters, linear scale.
// The same entry acts as CNR on the desired link and INR on interfering ones.
struct ChannelState {
    int num_users = 0;
    int num_tx = 0;
    std::vector<double> cnr;

    double at(int user, int tx) const {
        return cnr[static_cast<std::size_t>(user) * num_tx + tx];
    }
};

using PowerVector = std::vector<double>;

// Capped achievable rates, row-major users x transmitters, bits/s.
struct RateMatrix {
    int num_users = 0;
    int num_tx = 0;
    std::vector<double> rates;

    double at(int user, int tx) const {
        return rates[static_cast<std::size_t>(user) * num_tx + tx];
    }
};

double path_loss_db(double distance_km);  // 128.1 + 37.6 log10(d)

// SBSs and UAVs sit equally spaced on a ring of radius cell_radius/2 (SBS
// slots first); D2D transmitters and users are uniform over the hexagonal
// cell. Explicit coordinates in the scenario take precedence.
Placement place_nodes(const Scenario& scenario, std::uint64_t seed);

// Path loss over 3-D distance, log-normal shadowing (4 dB std) and Rayleigh
// fading, normalized by total noise power. Throws on co-located node pairs.
ChannelState draw_channel(const Scenario& scenario, const Placement& placement,
                          std::uint64_t seed);

double sinr(const ChannelState& channel, const PowerVector& powers, int user, int tx);

// Shannon rate of the (user, tx) link; min(C_fh, .) applied when the user is
// cache-miss and the transmitter an SBS.
double achievable_rate(const Scenario& scenario, const ChannelState& channel,
                       const PowerVector& powers, int user, int tx,
                       const UserClassification& classes,
                       const std::vector<TransmitterKind>& kinds);

// Bulk evaluation of achievable_rate over all pairs via the kernel layer.
RateMatrix achievable_rate_matrix(const Instance& instance, const ChannelState& channel,
                                  const PowerVector& powers);

}  // namespace ncsched
