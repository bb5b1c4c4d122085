/*
 * Data-parallel kernels for the rate computations that dominate the run time:
 * per-user received-power totals (a row-wise dot product with the power
 * vector) and the Shannon rate matrix over all user/transmitter pairs.
 *
 * A scalar reference implementation and an AVX2 variant are provided; the
 * active variant is selected once at startup from CPU capabilities and can be
 * overridden with the NCSCHED_KERNEL environment variable ("scalar"/"avx2").
 * Variants are equivalence-tested against each other; they may differ in the
 * last few ULPs because of summation order and FMA contraction.
 */
#pragma once

#include <cstddef>

namespace ncsched::kernels {

enum class Variant { Scalar, Avx2 };

const char* variant_name(Variant variant);

// Variant selected by the dispatcher (env override, then CPU detection).
Variant active_variant();

// Test hook; not safe to call while kernels run on other threads.
void force_variant(Variant variant);

bool avx2_supported();

// totals[n] = sum_t powers[t] * cnr[n*num_tx + t]
void received_power_totals(const double* cnr, const double* powers, int num_users, int num_tx,
                           double* totals);

// rates[n*num_tx + t] = bandwidth_hz * log2(1 + sinr(n, t)) where
// sinr(n, t) = powers[t]*cnr[n,t] / (1 + totals[n] - powers[t]*cnr[n,t]),
// with the interference term clamped at zero.
void shannon_rate_matrix(const double* cnr, const double* powers, const double* totals,
                         int num_users, int num_tx, double bandwidth_hz, double* rates);

namespace scalar {
void received_power_totals(const double* cnr, const double* powers, int num_users, int num_tx,
                           double* totals);
void shannon_rate_matrix(const double* cnr, const double* powers, const double* totals,
                         int num_users, int num_tx, double bandwidth_hz, double* rates);
}  // namespace scalar

#if defined(NCSCHED_HAVE_AVX2)
namespace avx2 {
void received_power_totals(const double* cnr, const double* powers, int num_users, int num_tx,
                           double* totals);
void shannon_rate_matrix(const double* cnr, const double* powers, const double* totals,
                         int num_users, int num_tx, double bandwidth_hz, double* rates);
}  // namespace avx2
#endif

}  // namespace ncsched::kernels
