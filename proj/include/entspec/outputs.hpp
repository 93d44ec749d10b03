#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "entspec/simulation.hpp"

namespace entspec {

/// spectrum.csv text: header, then one row per sample with t, t/t0, p1..pK,
/// purity, entropy, residual (%.17g, ',' separated, '\n' terminated).
std::string spectrum_csv(const RunResult& run);

/// Mode density text: x[,y],density per grid point, first axis slowest.
std::string density_csv(const ModeDensity& density);

/// "modes/t<sample>_r<rank>.csv"
std::string density_filename(int sample, int rank);

/// manifest.json text, keys sorted. `hashes` maps relative file names to
/// SHA-256 digests.
std::string manifest_json(const RunResult& run, int threads,
                          const std::vector<std::pair<std::string, std::string>>& hashes);

/// Writes spectrum.csv, modes/*.csv (one per density, sample index taken
/// from the run's time grid) and manifest.json. On failure every file written
/// so far is removed and IoError is thrown. Returns the relative paths.
std::vector<std::string> write_outputs(const RunResult& run, const std::filesystem::path& out_dir,
                                       int threads);

}  // namespace entspec
