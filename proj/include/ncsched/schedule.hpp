/*
 * A network-coded transmission schedule: per transmitter, the XOR coding
 * combination, the targeted users, and the single adopted rate.
 */
#pragma once

#include <vector>

namespace ncsched {

struct TransmitterPlan {
    std::vector<int> targeted_users;  // sorted, each user in at most one plan
    std::vector<int> coded_files;     // sorted distinct wanted files (XORed on air)
    double adopted_rate_bps = 0.0;

    bool active() const { return !targeted_users.empty(); }
};

struct Schedule {
    std::vector<TransmitterPlan> per_tx;

    int num_targeted() const {
        int count = 0;
        for (const auto& plan : per_tx) count += static_cast<int>(plan.targeted_users.size());
        return count;
    }

    // Delivered bits/s: every targeted user receives at its transmitter's
    // adopted rate.
    double carried_throughput_bps() const {
        double total = 0.0;
        for (const auto& plan : per_tx)
            total += static_cast<double>(plan.targeted_users.size()) * plan.adopted_rate_bps;
        return total;
    }
};

}  // namespace ncsched
