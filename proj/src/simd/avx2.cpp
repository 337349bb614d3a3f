// Apache License, Version 2.0, refer to LICENSE.txt
#include <immintrin.h>

#include <cstring>

#include "simd_impl.hpp"

namespace pchaos::simd::avx2 {

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        i += 4;
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc0);
    __m128d hi = _mm256_extractf128_pd(acc0, 1);
    lo = _mm_add_pd(lo, hi);
    double acc = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void masked_add(double* dst, const double* src, const std::uint8_t* mask, double weight,
                std::size_t n) {
    const __m256d w = _mm256_set1_pd(weight);
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        std::int32_t packed;
        std::memcpy(&packed, mask + i, sizeof(packed));
        const __m256i m64 = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
        const __m256d keep = _mm256_castsi256_pd(
            _mm256_xor_si256(_mm256_cmpeq_epi64(m64, zero), _mm256_set1_epi64x(-1)));
        const __m256d add = _mm256_and_pd(keep, w);
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(src + i), add));
    }
    for (; i < n; ++i) dst[i] = src[i] + (mask[i] ? weight : 0.0);
}

void threshold_le(std::uint8_t* out, const double* values, double theta, std::size_t n) {
    const __m256d t = _mm256_set1_pd(theta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const int bits = _mm256_movemask_pd(_mm256_cmp_pd(t, _mm256_loadu_pd(values + i), _CMP_LE_OQ));
        out[i + 0] = static_cast<std::uint8_t>(bits & 1);
        out[i + 1] = static_cast<std::uint8_t>((bits >> 1) & 1);
        out[i + 2] = static_cast<std::uint8_t>((bits >> 2) & 1);
        out[i + 3] = static_cast<std::uint8_t>((bits >> 3) & 1);
    }
    for (; i < n; ++i) out[i] = theta <= values[i] ? 1 : 0;
}

void mobius_alternating(std::int32_t* values, unsigned bits) {
    const std::size_t size = std::size_t{1} << bits;
    for (unsigned b = 0; b < bits; ++b) {
        const std::size_t half = std::size_t{1} << b;
        if (half < 8) {
            for (std::size_t base = 0; base < size; base += 2 * half) {
                for (std::size_t i = 0; i < half; ++i) values[base + half + i] -= values[base + i];
            }
            continue;
        }
        for (std::size_t base = 0; base < size; base += 2 * half) {
            std::int32_t* lo = values + base;
            std::int32_t* hi = lo + half;
            for (std::size_t i = 0; i < half; i += 8) {
                const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + i));
                const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + i));
                _mm256_storeu_si256(reinterpret_cast<__m256i*>(hi + i), _mm256_sub_epi32(c, a));
            }
        }
    }
}

}  // namespace pchaos::simd::avx2
