/*
 * Schedule validity checks: XOR decodability, single-transmitter assignment,
 * rate feasibility, and the caching constraint. Solvers run these defensively
 * on every emitted schedule; tests and the acceptance suite call them
 * directly.
 */
#pragma once

#include "ncsched/channel.hpp"
#include "ncsched/model.hpp"
#include "ncsched/schedule.hpp"

namespace ncsched {

struct ScheduleValidity {
    // Every targeted user recovers exactly its wanted file when XORing the
    // coded combination with the files it has.
    bool decodable = true;
    // No user is targeted by more than one transmitter.
    bool users_unique = true;
    // Adopted rate never exceeds a targeted user's achievable rate.
    bool rate_feasible = true;
    // Every coded file is either cached at the transmitter or fetched over
    // the fronthaul for a cache-miss user at an SBS.
    bool cache_constraint = true;

    bool all() const { return decodable && users_unique && rate_feasible && cache_constraint; }
};

ScheduleValidity validate_schedule(const Instance& instance, const RateMatrix& rates,
                                   const Schedule& schedule);

}  // namespace ncsched
