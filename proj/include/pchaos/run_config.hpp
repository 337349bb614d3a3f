// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pchaos/hawkes.hpp"

namespace pchaos {

/// Malformed, incomplete or invalid run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` run configuration shared by every CLI subcommand.
struct RunConfig {
    double mu{1.0};
    double T{5.0};
    double M{4.0};
    std::string kernel{"exp"};  // exp | zero | table
    double alpha{0.5};
    double beta{1.0};
    std::string table;          // CSV path for kernel = table
    std::uint64_t seed{7};
    std::size_t n_paths{10000};
    double h{0.01};             // ladder grid step
    double horizon{0.0};        // ladder horizon; 0 means T
    std::size_t n_max{40};
    std::size_t j_max{2};
    std::string mode{"thinning"};  // thinning | imbedding
    std::string points;         // "t:theta,t:theta" for coeff
    std::string input;          // configuration CSV for reconstruct

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses `key = value` lines with `#` comments. Required keys: mu, T, M,
/// kernel (plus alpha and beta for exp, table for table). Unknown or repeated
/// keys, malformed numbers (reported with line number), mu <= 0 and unstable
/// kernels are rejected with ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Text that parse_config maps back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

/// Desk-scale defaults: mu = 1, T = 5, M = 4, Phi = 0.5 e^{-t}, seed 7, 10^4 paths.
RunConfig default_config();

Kernel make_kernel(const RunConfig& config);
HawkesParams make_params(const RunConfig& config);
SimulationMode make_mode(const RunConfig& config);

}  // namespace pchaos
