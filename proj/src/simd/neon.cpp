// Apache License, Version 2.0, refer to LICENSE.txt
#include <arm_neon.h>

#include "simd_impl.hpp"

namespace pchaos::simd::neon {

double dot(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void masked_add(double* dst, const double* src, const std::uint8_t* mask, double weight,
                std::size_t n) {
    const float64x2_t w = vdupq_n_f64(weight);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64_t lanes[2] = {mask[i] ? ~uint64_t{0} : 0, mask[i + 1] ? ~uint64_t{0} : 0};
        const uint64x2_t keep = vld1q_u64(lanes);
        const float64x2_t add = vreinterpretq_f64_u64(vandq_u64(keep, vreinterpretq_u64_f64(w)));
        vst1q_f64(dst + i, vaddq_f64(vld1q_f64(src + i), add));
    }
    for (; i < n; ++i) dst[i] = src[i] + (mask[i] ? weight : 0.0);
}

void threshold_le(std::uint8_t* out, const double* values, double theta, std::size_t n) {
    const float64x2_t t = vdupq_n_f64(theta);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t le = vcleq_f64(t, vld1q_f64(values + i));
        out[i] = static_cast<std::uint8_t>(vgetq_lane_u64(le, 0) & 1);
        out[i + 1] = static_cast<std::uint8_t>(vgetq_lane_u64(le, 1) & 1);
    }
    for (; i < n; ++i) out[i] = theta <= values[i] ? 1 : 0;
}

void mobius_alternating(std::int32_t* values, unsigned bits) {
    const std::size_t size = std::size_t{1} << bits;
    for (unsigned b = 0; b < bits; ++b) {
        const std::size_t half = std::size_t{1} << b;
        for (std::size_t base = 0; base < size; base += 2 * half) {
            std::int32_t* lo = values + base;
            std::int32_t* hi = lo + half;
            std::size_t i = 0;
            if (half >= 4) {
                for (; i < half; i += 4) vst1q_s32(hi + i, vsubq_s32(vld1q_s32(hi + i), vld1q_s32(lo + i)));
            }
            for (; i < half; ++i) hi[i] -= lo[i];
        }
    }
}

}  // namespace pchaos::simd::neon
