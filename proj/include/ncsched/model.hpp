/*
 * Static network description: transmitters, caches, user side information,
 * demands, and the cache-hit/cache-miss classification.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncsched {

enum class TransmitterKind { D2D, SBS, UAV };

enum class UserClass { CacheHit, CacheMiss };

// Full parameter set of one network scenario. Power and noise are given as
// spectral densities (dBm/Hz) and integrated over the bandwidth when linear
// totals are needed.
struct Scenario {
    int num_d2d = 3;
    int num_sbs = 3;
    int num_uav = 2;
    int num_users = 15;
    int num_files = 30;
    double caching_ratio = 0.6;
    double fronthaul_capacity_bps = 10e6;
    double bandwidth_hz = 10e6;
    double noise_psd_dbm_hz = -168.60;
    double max_power_psd_dbm_hz = -42.60;
    double cell_radius_m = 900.0;
    double uav_altitude_m = 100.0;
    double side_info_ratio = 0.3;
    std::uint64_t rng_seed = 1;

    bool shadowing_enabled = true;
    bool fading_enabled = true;

    // Optional explicit coordinates; when set they override place_nodes.
    std::optional<std::vector<std::array<double, 3>>> fixed_transmitter_positions;
    std::optional<std::vector<std::array<double, 2>>> fixed_user_positions;

    int num_transmitters() const { return num_d2d + num_sbs + num_uav; }
    int cache_size() const;      // floor(caching_ratio * num_files)
    int side_info_size() const;  // floor(side_info_ratio * num_files)

    double max_power_watts() const;    // P_max integrated over the bandwidth
    double noise_power_watts() const;  // total noise power over the bandwidth

    // Empty string when valid, otherwise a description of the first problem.
    std::string validate() const;
    void require_valid() const;  // throws std::invalid_argument
};

// Transmitter index layout: D2D in [0, N), SBS in [N, N+K), UAV in [N+K, T).
std::vector<TransmitterKind> transmitter_kinds(const Scenario& scenario);

// Per-transmitter cached file sets, each sorted ascending.
struct CacheAllocation {
    std::vector<std::vector<int>> files;
};

// Per-user Has set (sorted) and single wanted file. The Lacks set is the
// complement of Has and is never stored.
struct SideInformation {
    std::vector<std::vector<int>> has;
    std::vector<int> wants;
};

using UserClassification = std::vector<UserClass>;

// One generated realization of caches, side information and demands.
struct Instance {
    Scenario scenario;
    std::vector<TransmitterKind> kinds;
    CacheAllocation caches;
    SideInformation side;
    UserClassification classes;
};

// A user is cache-hit iff its wanted file sits in at least one UAV or D2D
// cache; SBS caches do not count toward hit status.
UserClassification classify_users(const CacheAllocation& caches, const SideInformation& side,
                                  const std::vector<TransmitterKind>& kinds);

// Samples caches, Has sets and demands uniformly, fully determined by
// scenario.rng_seed.
Instance generate_instance(const Scenario& scenario);

}  // namespace ncsched
