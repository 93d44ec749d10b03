#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "entspec/lattice.hpp"

namespace entspec {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Throws IoError if the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

/// Hash of everything the block Hamiltonians depend on (dimension, box,
/// masses, ħ, n_max, potential with its resolved strength).
std::string physics_hash(const SimConfig& resolved);

}  // namespace entspec
