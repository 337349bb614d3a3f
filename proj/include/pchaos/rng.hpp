// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace pchaos {

/// Identifies one independent random stream: path `path_index` of experiment
/// `seed`. Streams for distinct keys are statistically independent and do not
/// depend on the order in which they are created.
struct RngKey {
    std::uint64_t seed{0};
    std::uint64_t path_index{0};

    friend bool operator==(const RngKey&, const RngKey&) = default;
};

using Engine = std::mt19937_64;

Engine make_engine(RngKey key);

/// Seed for a named sub-experiment, so that e.g. term j of a series and the
/// reference expectation draw from disjoint stream families.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

std::string to_string(RngKey key);

}  // namespace pchaos
