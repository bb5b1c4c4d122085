/*
 * AVX2 kernels, 4 doubles per lane group. The rate kernel needs a vector
 * log2; arguments are always >= 1 here (1 + SINR), so the usual subnormal
 * and sign handling can be skipped: split into exponent and mantissa, fold
 * the mantissa into [1/sqrt(2), sqrt(2)), and evaluate the atanh series
 * log(m) = 2 * atanh((m-1)/(m+1)) with exact reciprocal-odd coefficients.
 * The truncation error of the 11-term series is below one ULP for that
 * mantissa range.
 */
#include "ncsched/kernels.hpp"

#if defined(NCSCHED_HAVE_AVX2)

#include <immintrin.h>

namespace ncsched::kernels::avx2 {

namespace {

// Masks for 0..3 active tail lanes.
inline __m256i tail_mask(int live) {
    alignas(32) static const long long table[8] = {-1, -1, -1, -1, 0, 0, 0, 0};
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table + (4 - live)));
}

inline __m256d log2_pd(__m256d x) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
    const __m256d log2e_x2 = _mm256_set1_pd(2.8853900817779268);  // 2/ln(2)

    // Exponent and mantissa in [1, 2).
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
    const __m256i exp_biased = _mm256_sub_epi64(exp_bits, _mm256_set1_epi64x(1023));
    const __m256i mant_bits = _mm256_or_si256(
        _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
        _mm256_set1_epi64x(0x3ff0000000000000LL));
    __m256d mant = _mm256_castsi256_pd(mant_bits);

    // Fold mantissa into [1/sqrt(2), sqrt(2)) so the series argument stays
    // small; exponents fit in doubles exactly.
    const __m256d fold = _mm256_cmp_pd(mant, sqrt2, _CMP_GT_OQ);
    mant = _mm256_blendv_pd(mant, _mm256_mul_pd(mant, half), fold);
    // int64 -> double via the low dwords; exponents are far below 2^31.
    const __m256d exp_lo = _mm256_cvtepi32_pd(_mm256_castsi256_si128(
        _mm256_permutevar8x32_epi32(exp_biased, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0))));
    const __m256d exponent = _mm256_add_pd(exp_lo, _mm256_and_pd(fold, one));

    const __m256d z =
        _mm256_div_pd(_mm256_sub_pd(mant, one), _mm256_add_pd(mant, one));
    const __m256d w = _mm256_mul_pd(z, z);

    __m256d series = _mm256_set1_pd(1.0 / 21.0);
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 19.0));
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 17.0));
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 15.0));
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 13.0));
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 11.0));
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 9.0));
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 7.0));
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 5.0));
    series = _mm256_fmadd_pd(series, w, _mm256_set1_pd(1.0 / 3.0));
    series = _mm256_fmadd_pd(series, w, one);

    return _mm256_fmadd_pd(_mm256_mul_pd(log2e_x2, z), series, exponent);
}

}  // namespace

void received_power_totals(const double* cnr, const double* powers, int num_users, int num_tx,
                           double* totals) {
    const int full = num_tx & ~3;
    const int tail = num_tx - full;
    const __m256i mask = tail_mask(tail);
    for (int n = 0; n < num_users; ++n) {
        const double* row = cnr + static_cast<std::size_t>(n) * num_tx;
        __m256d acc = _mm256_setzero_pd();
        for (int t = 0; t < full; t += 4)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(powers + t), _mm256_loadu_pd(row + t), acc);
        if (tail != 0) {
            const __m256d p = _mm256_maskload_pd(powers + full, mask);
            const __m256d g = _mm256_maskload_pd(row + full, mask);
            acc = _mm256_fmadd_pd(p, g, acc);
        }
        const __m128d lo = _mm256_castpd256_pd128(acc);
        const __m128d hi = _mm256_extractf128_pd(acc, 1);
        const __m128d sum2 = _mm_add_pd(lo, hi);
        totals[n] = _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
    }
}

void shannon_rate_matrix(const double* cnr, const double* powers, const double* totals,
                         int num_users, int num_tx, double bandwidth_hz, double* rates) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d bw = _mm256_set1_pd(bandwidth_hz);
    const int full = num_tx & ~3;
    const int tail = num_tx - full;
    const __m256i mask = tail_mask(tail);
    for (int n = 0; n < num_users; ++n) {
        const double* row = cnr + static_cast<std::size_t>(n) * num_tx;
        double* out = rates + static_cast<std::size_t>(n) * num_tx;
        const __m256d total = _mm256_set1_pd(totals[n]);
        auto compute = [&](__m256d p, __m256d g) {
            const __m256d own = _mm256_mul_pd(p, g);
            const __m256d interference = _mm256_max_pd(_mm256_sub_pd(total, own), zero);
            const __m256d sinr = _mm256_div_pd(own, _mm256_add_pd(one, interference));
            return _mm256_mul_pd(bw, log2_pd(_mm256_add_pd(one, sinr)));
        };
        for (int t = 0; t < full; t += 4)
            _mm256_storeu_pd(out + t,
                             compute(_mm256_loadu_pd(powers + t), _mm256_loadu_pd(row + t)));
        if (tail != 0) {
            // Masked lanes load as zero; own = 0 gives rate 0, safe to compute.
            const __m256d p = _mm256_maskload_pd(powers + full, mask);
            const __m256d g = _mm256_maskload_pd(row + full, mask);
            _mm256_maskstore_pd(out + full, mask, compute(p, g));
        }
    }
}

}  // namespace ncsched::kernels::avx2

#endif  // NCSCHED_HAVE_AVX2
