// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

// Data-parallel inner loops shared by the convolution ladder and the subset
// enumeration code. Every kernel has a scalar reference in scalar.cpp and
// optional AVX2 / NEON variants; the active table is chosen once at startup
// from the CPU features (override with PCHAOS_ISA=scalar|avx2|neon).
//
// masked_add, threshold_le and mobius_alternating are exact: all variants
// produce bitwise identical output. dot is only equal up to rounding since
// the vector variants reassociate the sum.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pchaos::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    double (*dot)(const double* a, const double* b, std::size_t n);
    // dst[i] = src[i] + (mask[i] ? weight : 0.0)
    void (*masked_add)(double* dst, const double* src, const std::uint8_t* mask,
                       double weight, std::size_t n);
    // out[i] = theta <= values[i]
    void (*threshold_le)(std::uint8_t* out, const double* values, double theta,
                         std::size_t n);
    // In-place subset Moebius transform over a 2^bits array:
    // v[S] <- sum_{U subset S} (-1)^{|S|-|U|} v[U].
    void (*mobius_alternating)(std::int32_t* values, unsigned bits);
};

/// Scalar reference table; always available.
const KernelTable& scalar_table() noexcept;

/// Table for `isa`, or nullptr when it was not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;

/// The table used by the library.
const KernelTable& active() noexcept;

/// Forces the active table (tests, benchmarking). Returns false if unavailable.
bool set_active(Isa isa) noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void masked_add(std::span<double> dst, std::span<const double> src,
                       std::span<const std::uint8_t> mask, double weight) {
    active().masked_add(dst.data(), src.data(), mask.data(), weight, dst.size());
}

inline void threshold_le(std::span<std::uint8_t> out, std::span<const double> values,
                         double theta) {
    active().threshold_le(out.data(), values.data(), theta, out.size());
}

void mobius_alternating(std::span<std::int32_t> values);

}  // namespace pchaos::simd
