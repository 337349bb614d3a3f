// Apache License, Version 2.0, refer to LICENSE.txt
#include "pchaos/rng.hpp"

namespace pchaos {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Engine make_engine(RngKey key) {
    const std::uint64_t a = splitmix64(key.seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(key.path_index + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Engine(seq);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(~stream));
}

std::string to_string(RngKey key) {
    return "seed=" + std::to_string(key.seed) + ",path=" + std::to_string(key.path_index);
}

}  // namespace pchaos
