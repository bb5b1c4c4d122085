#include <atomic>
#include <cstdlib>
#include <cstring>

#include "ncsched/kernels.hpp"

namespace ncsched::kernels {

namespace {

Variant detect_variant() {
    if (const char* env = std::getenv("NCSCHED_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Variant::Scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Variant::Avx2;
    }
    return avx2_supported() ? Variant::Avx2 : Variant::Scalar;
}

std::atomic<Variant> g_variant{detect_variant()};

}  // namespace

const char* variant_name(Variant variant) {
    return variant == Variant::Avx2 ? "avx2" : "scalar";
}

Variant active_variant() { return g_variant.load(std::memory_order_relaxed); }

void force_variant(Variant variant) {
    if (variant == Variant::Avx2 && !avx2_supported()) return;
    g_variant.store(variant, std::memory_order_relaxed);
}

bool avx2_supported() {
#if defined(NCSCHED_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void received_power_totals(const double* cnr, const double* powers, int num_users, int num_tx,
                           double* totals) {
#if defined(NCSCHED_HAVE_AVX2)
    if (active_variant() == Variant::Avx2) {
        avx2::received_power_totals(cnr, powers, num_users, num_tx, totals);
        return;
    }
#endif
    scalar::received_power_totals(cnr, powers, num_users, num_tx, totals);
}

void shannon_rate_matrix(const double* cnr, const double* powers, const double* totals,
                         int num_users, int num_tx, double bandwidth_hz, double* rates) {
#if defined(NCSCHED_HAVE_AVX2)
    if (active_variant() == Variant::Avx2) {
        avx2::shannon_rate_matrix(cnr, powers, totals, num_users, num_tx, bandwidth_hz, rates);
        return;
    }
#endif
    scalar::shannon_rate_matrix(cnr, powers, totals, num_users, num_tx, bandwidth_hz, rates);
}

}  // namespace ncsched::kernels
