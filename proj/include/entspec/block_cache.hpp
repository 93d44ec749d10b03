#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "entspec/blocks.hpp"

namespace entspec {

// On-disk form of diagonalized blocks: <dir>/blocks.bin (native-endian
// binary) and <dir>/blocks.json (physics hash, counts, SHA-256 of the .bin).

/// Writes both files; IoError on failure (partial files removed).
void save_blocks(const std::filesystem::path& dir, std::span<const MomentumBlock> blocks,
                 const SimConfig& resolved);

/// Blocks for this configuration, or nullopt when the cache is absent or was
/// built for different physics. A corrupt cache throws IoError.
std::optional<std::vector<MomentumBlock>> load_blocks(const std::filesystem::path& dir,
                                                      const SimConfig& resolved);

}  // namespace entspec
