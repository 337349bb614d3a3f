// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

// Per-ISA entry points. Kept free of standard library containers so the
// vector translation units can be compiled with different target flags.

#include <cstddef>
#include <cstdint>

namespace pchaos::simd::scalar {
double dot(const double* a, const double* b, std::size_t n);
void masked_add(double* dst, const double* src, const std::uint8_t* mask, double weight,
                std::size_t n);
void threshold_le(std::uint8_t* out, const double* values, double theta, std::size_t n);
void mobius_alternating(std::int32_t* values, unsigned bits);
}  // namespace pchaos::simd::scalar

namespace pchaos::simd::avx2 {
double dot(const double* a, const double* b, std::size_t n);
void masked_add(double* dst, const double* src, const std::uint8_t* mask, double weight,
                std::size_t n);
void threshold_le(std::uint8_t* out, const double* values, double theta, std::size_t n);
void mobius_alternating(std::int32_t* values, unsigned bits);
}  // namespace pchaos::simd::avx2

namespace pchaos::simd::neon {
double dot(const double* a, const double* b, std::size_t n);
void masked_add(double* dst, const double* src, const std::uint8_t* mask, double weight,
                std::size_t n);
void threshold_le(std::uint8_t* out, const double* values, double theta, std::size_t n);
void mobius_alternating(std::int32_t* values, unsigned bits);
}  // namespace pchaos::simd::neon
