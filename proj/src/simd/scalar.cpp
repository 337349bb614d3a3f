// Apache License, Version 2.0, refer to LICENSE.txt
#include "simd_impl.hpp"

namespace pchaos::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void masked_add(double* dst, const double* src, const std::uint8_t* mask, double weight,
                std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] + (mask[i] ? weight : 0.0);
}

void threshold_le(std::uint8_t* out, const double* values, double theta, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = theta <= values[i] ? 1 : 0;
}

void mobius_alternating(std::int32_t* values, unsigned bits) {
    const std::size_t size = std::size_t{1} << bits;
    for (unsigned b = 0; b < bits; ++b) {
        const std::size_t half = std::size_t{1} << b;
        for (std::size_t base = 0; base < size; base += 2 * half) {
            for (std::size_t i = 0; i < half; ++i) values[base + half + i] -= values[base + i];
        }
    }
}

}  // namespace pchaos::simd::scalar
