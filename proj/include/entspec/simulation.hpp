#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entspec/blocks.hpp"
#include "entspec/entanglement.hpp"
#include "entspec/evolution.hpp"
#include "entspec/lattice.hpp"
#include "entspec/realspace.hpp"

namespace entspec {

struct RunOptions {
  int threads = 1;
  std::optional<std::filesystem::path> cache_dir;  // reuse/store diagonalized blocks
  bool keep_blocks = false;                        // return them in RunResult::blocks
};

struct SpectrumRow {
  double t = 0.0;
  double t_over_t0 = 0.0;
  std::vector<double> p;
  double purity = 0.0;
  double entropy = 0.0;
  double residual = 0.0;
};

struct RunResult {
  SimConfig config;    // as given
  SimConfig resolved;  // strength filled in
  std::vector<Diagnostic> warnings;
  DerivedScales scales1;
  DerivedScales scales2;
  double t0 = 0.0;  // particle 1; NaN when its n_c is zero
  BlockStats stats;
  std::string cache_status = "off";  // off | hit | miss
  std::vector<EntanglementSnapshot> snapshots;
  std::vector<ModeTrack> tracks;
  std::vector<SpectrumRow> series;
  ConservedReport conservation;
  std::vector<ModeDensity> densities;
  std::vector<std::pair<std::string, double>> timings;  // phase, seconds
  std::vector<MomentumBlock> blocks;                    // only with keep_blocks
  std::vector<BlockState> states;                       // only with keep_blocks
};

/// validate → resolve strength → build (or load) blocks → project → evolve →
/// Schmidt spectrum → track modes → real-space densities for cfg.modes.
/// Failures are rethrown with the phase name prepended. A conservation
/// violation is a NumericError.
RunResult run_simulation(const SimConfig& cfg, const RunOptions& options = {});

/// Densities for the given sample indices and ranks of a finished run.
std::vector<ModeDensity> mode_densities(const RunResult& run, const std::vector<int>& samples,
                                        const std::vector<int>& ranks, int resolution, int threads);

}  // namespace entspec
