#include "ncsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ncsched/rng.hpp"

namespace ncsched {

int Scenario::cache_size() const {
    return static_cast<int>(std::floor(caching_ratio * num_files));
}

int Scenario::side_info_size() const {
    return static_cast<int>(std::floor(side_info_ratio * num_files));
}

double Scenario::max_power_watts() const {
    const double dbm = max_power_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double Scenario::noise_power_watts() const {
    const double dbm = noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

std::string Scenario::validate() const {
    if (num_d2d < 1 || num_sbs < 1 || num_uav < 1) return "transmitter counts must be >= 1";
    if (num_users < 1) return "num_users must be >= 1";
    if (num_files < 1) return "num_files must be >= 1";
    if (caching_ratio < 0.0 || caching_ratio > 1.0) return "caching_ratio must be in [0, 1]";
    // 0 disables the fronthaul entirely (cache-miss users become unservable).
    if (fronthaul_capacity_bps < 0.0) return "fronthaul_capacity_bps must be >= 0";
    if (bandwidth_hz <= 0.0) return "bandwidth_hz must be > 0";
    if (cell_radius_m <= 0.0) return "cell_radius_m must be > 0";
    if (uav_altitude_m < 0.0) return "uav_altitude_m must be >= 0";
    if (side_info_ratio < 0.0 || side_info_ratio >= 1.0)
        return "side_info_ratio must be in [0, 1)";
    if (side_info_size() >= num_files)
        return "side information leaves no file to request";
    if (fixed_transmitter_positions &&
        static_cast<int>(fixed_transmitter_positions->size()) != num_transmitters())
        return "fixed_transmitter_positions size must equal the transmitter count";
    if (fixed_user_positions && static_cast<int>(fixed_user_positions->size()) != num_users)
        return "fixed_user_positions size must equal num_users";
    return {};
}

void Scenario::require_valid() const {
    if (const auto problem = validate(); !problem.empty())
        throw std::invalid_argument("invalid scenario: " + problem);
}

std::vector<TransmitterKind> transmitter_kinds(const Scenario& scenario) {
    std::vector<TransmitterKind> kinds;
    kinds.reserve(static_cast<std::size_t>(scenario.num_transmitters()));
    kinds.insert(kinds.end(), static_cast<std::size_t>(scenario.num_d2d), TransmitterKind::D2D);
    kinds.insert(kinds.end(), static_cast<std::size_t>(scenario.num_sbs), TransmitterKind::SBS);
    kinds.insert(kinds.end(), static_cast<std::size_t>(scenario.num_uav), TransmitterKind::UAV);
    return kinds;
}

UserClassification classify_users(const CacheAllocation& caches, const SideInformation& side,
                                  const std::vector<TransmitterKind>& kinds) {
    UserClassification classes(side.wants.size(), UserClass::CacheMiss);
    for (std::size_t n = 0; n < side.wants.size(); ++n) {
        const int wanted = side.wants[n];
        for (std::size_t t = 0; t < kinds.size(); ++t) {
            if (kinds[t] == TransmitterKind::SBS) continue;
            if (std::binary_search(caches.files[t].begin(), caches.files[t].end(), wanted)) {
                classes[n] = UserClass::CacheHit;
                break;
            }
        }
    }
    return classes;
}

Instance generate_instance(const Scenario& scenario) {
    scenario.require_valid();
    const int num_tx = scenario.num_transmitters();
    const int num_files = scenario.num_files;
    const int cache_size = scenario.cache_size();
    const int has_size = scenario.side_info_size();
    if (has_size >= num_files)
        throw std::invalid_argument("side information leaves no file to request");

    Rng rng(mix_seed(scenario.rng_seed, 0x696e7374ULL));  // instance stream

    Instance instance;
    instance.scenario = scenario;
    instance.kinds = transmitter_kinds(scenario);

    instance.caches.files.resize(static_cast<std::size_t>(num_tx));
    for (int t = 0; t < num_tx; ++t)
        instance.caches.files[static_cast<std::size_t>(t)] =
            rng.sample_without_replacement(num_files, cache_size);

    instance.side.has.resize(static_cast<std::size_t>(scenario.num_users));
    instance.side.wants.resize(static_cast<std::size_t>(scenario.num_users));
    for (int n = 0; n < scenario.num_users; ++n) {
        auto& has = instance.side.has[static_cast<std::size_t>(n)];
        has = rng.sample_without_replacement(num_files, has_size);
        // Wanted file: uniform over the complement of the Has set.
        const auto pick = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(num_files - has_size)));
        int wanted = -1;
        int skipped = 0;
        std::size_t has_pos = 0;
        for (int f = 0; f < num_files; ++f) {
            if (has_pos < has.size() && has[has_pos] == f) {
                ++has_pos;
                continue;
            }
            if (skipped == pick) {
                wanted = f;
                break;
            }
            ++skipped;
        }
        instance.side.wants[static_cast<std::size_t>(n)] = wanted;
    }

    instance.classes = classify_users(instance.caches, instance.side, instance.kinds);
    return instance;
}

}  // namespace ncsched
