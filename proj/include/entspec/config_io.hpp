#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "entspec/lattice.hpp"

namespace entspec {

/// Parses the sectioned `key = value` format:
///
///   [physics]   d, L, m1, m2, hbar, n_max
///   [packet1]   N_c, X_c, sigma          (vectors as "a, b" in 2D)
///   [packet2]   same keys; each missing key mirrors packet1 (N_c, X_c negated)
///   [potential] kind = delta|gaussian, A, w, T, counterterm = true|false
///   [run]       t_end | t_end_t0, n_samples, K,
///               mode_samples, mode_ranks (comma lists), mode_resolution
///
/// '#' starts a comment. Unknown, duplicate or malformed entries throw
/// ConfigError naming the line. Range checks are left to validate_config.
SimConfig parse_config(std::string_view text);

/// Reads and parses a file; IoError if it cannot be read.
SimConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const SimConfig& cfg);

/// printf("%.17g").
std::string format_double(double value);

}  // namespace entspec
