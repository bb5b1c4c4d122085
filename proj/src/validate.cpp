#include "ncsched/validate.hpp"

#include <algorithm>
#include <vector>

namespace ncsched {

ScheduleValidity validate_schedule(const Instance& instance, const RateMatrix& rates,
                                   const Schedule& schedule) {
    ScheduleValidity validity;
    std::vector<int> times_targeted(static_cast<std::size_t>(instance.scenario.num_users), 0);

    for (int t = 0; t < static_cast<int>(schedule.per_tx.size()); ++t) {
        const auto& plan = schedule.per_tx[static_cast<std::size_t>(t)];
        if (!plan.active()) continue;
        const auto& cache = instance.caches.files[static_cast<std::size_t>(t)];

        for (const int user : plan.targeted_users) {
            ++times_targeted[static_cast<std::size_t>(user)];
            const auto& has = instance.side.has[static_cast<std::size_t>(user)];
            const int wanted = instance.side.wants[static_cast<std::size_t>(user)];

            // XOR decoding: the files of the combination the user does not
            // already hold must be exactly its wanted file.
            int unknown = 0;
            bool wanted_covered = false;
            for (const int file : plan.coded_files) {
                if (std::binary_search(has.begin(), has.end(), file)) continue;
                ++unknown;
                wanted_covered |= file == wanted;
            }
            if (unknown != 1 || !wanted_covered) validity.decodable = false;

            if (plan.adopted_rate_bps > rates.at(user, t)) validity.rate_feasible = false;

            const bool cached = std::binary_search(cache.begin(), cache.end(), wanted);
            const bool fronthaul_ok =
                instance.classes[static_cast<std::size_t>(user)] == UserClass::CacheMiss &&
                instance.kinds[static_cast<std::size_t>(t)] == TransmitterKind::SBS;
            if (!cached && !fronthaul_ok) validity.cache_constraint = false;
        }
    }

    for (const int count : times_targeted)
        if (count > 1) validity.users_unique = false;
    return validity;
}

}  // namespace ncsched
