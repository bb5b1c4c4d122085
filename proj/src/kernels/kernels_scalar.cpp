/*
 * Scalar reference kernels. Kept deliberately plain: these define the
 * semantics the vectorized variants are tested against.
 */
#include <algorithm>
#include <cmath>

#include "ncsched/kernels.hpp"

namespace ncsched::kernels::scalar {

void received_power_totals(const double* cnr, const double* powers, int num_users, int num_tx,
                           double* totals) {
    for (int n = 0; n < num_users; ++n) {
        const double* row = cnr + static_cast<std::size_t>(n) * num_tx;
        double total = 0.0;
        for (int t = 0; t < num_tx; ++t) total += powers[t] * row[t];
        totals[n] = total;
    }
}

void shannon_rate_matrix(const double* cnr, const double* powers, const double* totals,
                         int num_users, int num_tx, double bandwidth_hz, double* rates) {
    for (int n = 0; n < num_users; ++n) {
        const double* row = cnr + static_cast<std::size_t>(n) * num_tx;
        double* out = rates + static_cast<std::size_t>(n) * num_tx;
        const double total = totals[n];
        for (int t = 0; t < num_tx; ++t) {
            const double own = powers[t] * row[t];
            const double interference = std::max(total - own, 0.0);
            const double sinr = own / (1.0 + interference);
            out[t] = bandwidth_hz * std::log2(1.0 + sinr);
        }
    }
}

}  // namespace ncsched::kernels::scalar
