// Apache License, Version 2.0, refer to LICENSE.txt
#include <atomic>
#include <bit>
#include <stdexcept>
#include <cstdlib>
#include <string_view>

#include "pchaos/simd/kernels.hpp"
#include "simd_impl.hpp"

namespace pchaos::simd {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::dot, &scalar::masked_add,
                              &scalar::threshold_le, &scalar::mobius_alternating};

#if defined(PCHAOS_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::dot, &avx2::masked_add, &avx2::threshold_le,
                            &avx2::mobius_alternating};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(PCHAOS_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, &neon::dot, &neon::masked_add, &neon::threshold_le,
                            &neon::mobius_alternating};
#endif

const KernelTable* detect() noexcept {
    if (const char* env = std::getenv("PCHAOS_ISA")) {
        const std::string_view want{env};
        if (want == "scalar") return &kScalar;
        if (want == "avx2") {
            if (const KernelTable* t = table_for(Isa::Avx2)) return t;
        }
        if (want == "neon") {
            if (const KernelTable* t = table_for(Isa::Neon)) return t;
        }
    }
    if (const KernelTable* t = table_for(Isa::Avx2)) return t;
    if (const KernelTable* t = table_for(Isa::Neon)) return t;
    return &kScalar;
}

std::atomic<const KernelTable*>& slot() noexcept {
    static std::atomic<const KernelTable*> current{detect()};
    return current;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return &kScalar;
        case Isa::Avx2:
#if defined(PCHAOS_HAVE_AVX2)
            return cpu_has_avx2() ? &kAvx2 : nullptr;
#else
            return nullptr;
#endif
        case Isa::Neon:
#if defined(PCHAOS_HAVE_NEON)
            return &kNeon;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_relaxed); }

bool set_active(Isa isa) noexcept {
    const KernelTable* t = table_for(isa);
    if (t == nullptr) return false;
    slot().store(t, std::memory_order_relaxed);
    return true;
}

void mobius_alternating(std::span<std::int32_t> values) {
    if (!std::has_single_bit(values.size())) {
        throw std::invalid_argument("mobius_alternating: size must be a power of two");
    }
    const auto bits = static_cast<unsigned>(std::countr_zero(values.size()));
    active().mobius_alternating(values.data(), bits);
}

}  // namespace pchaos::simd
