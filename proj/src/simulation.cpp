#include "entspec/simulation.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "entspec/block_cache.hpp"
#include "entspec/errors.hpp"
#include "entspec/parallel.hpp"
#include "entspec/wavepacket.hpp"

namespace entspec {

namespace {

class PhaseTimer {
 public:
  explicit PhaseTimer(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

  template <class F>
  auto run(const std::string& phase, F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto done = [&] {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      sink_.emplace_back(phase, dt.count());
    };
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        done();
      } else {
        auto value = fn();
        done();
        return value;
      }
    } catch (const ConfigError& e) {
      throw ConfigError(phase + ": " + e.what());
    } catch (const NumericError& e) {
      throw NumericError(phase + ": " + e.what());
    } catch (const IoError& e) {
      throw IoError(phase + ": " + e.what());
    }
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
};

}  // namespace

std::vector<ModeDensity> mode_densities(const RunResult& run, const std::vector<int>& samples,
                                        const std::vector<int>& ranks, int resolution, int threads) {
  std::vector<std::pair<int, int>> jobs;
  for (int j : samples) {
    if (j < 0 || static_cast<std::size_t>(j) >= run.snapshots.size()) {
      throw ConfigError("mode sample index out of range: " + std::to_string(j));
    }
    for (int r : ranks) {
      if (r < 1 || r > run.snapshots[static_cast<std::size_t>(j)].modes.cols()) {
        throw ConfigError("mode rank out of range: " + std::to_string(r));
      }
      jobs.emplace_back(j, r);
    }
  }
  std::vector<ModeDensity> out(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const auto [j, r] = jobs[i];
    const auto& snap = run.snapshots[static_cast<std::size_t>(j)];
    auto d = mode_to_position(snap.modes.col(r - 1), run.resolved, resolution);
    d.time = snap.time;
    d.rank = r;
    d.probability = snap.probabilities[static_cast<std::size_t>(r - 1)];
    out[i] = std::move(d);
  });
  return out;
}

RunResult run_simulation(const SimConfig& cfg, const RunOptions& options) {
  RunResult run;
  run.config = cfg;
  PhaseTimer timer(run.timings);
  const int threads = std::max(1, options.threads);

  timer.run("validate", [&] {
    run.warnings = require_valid(cfg);
    run.resolved = cfg;
    resolve_strength(run.resolved);
    const auto& p1 = cfg.packet1.central_momentum;
    const auto& p2 = cfg.packet2.central_momentum;
    run.t0 = std::numeric_limits<double>::quiet_NaN();
    if (p1[0] != 0.0) {
      run.scales1 = derived_scales(run.resolved, 1);
      run.t0 = run.scales1.t0;
    }
    if (p2[0] != 0.0) run.scales2 = derived_scales(run.resolved, 2);
  });
  const SimConfig& rc = run.resolved;

  std::vector<MomentumBlock> blocks = timer.run("blocks", [&] {
    if (options.cache_dir) {
      if (auto cached = load_blocks(*options.cache_dir, rc)) {
        run.cache_status = "hit";
        return std::move(*cached);
      }
      run.cache_status = "miss";
    }
    auto built = build_blocks(rc, threads);
    if (options.cache_dir) save_blocks(*options.cache_dir, built, rc);
    return built;
  });
  run.stats = block_stats(blocks);

  const BlockState initial = timer.run("project", [&] {
    const auto psi0 =
        product_state(packet_coefficients(rc.packet1, rc), packet_coefficients(rc.packet2, rc));
    return project_to_blocks(psi0, blocks, threads);
  });

  const auto times = sample_times(rc);
  const std::size_t grid = MomentumGrid(rc.dim, rc.n_max).size();
  run.snapshots.resize(times.size());
  std::vector<ConservedSample> conserved(times.size());
  if (options.keep_blocks) run.states.resize(times.size());

  timer.run("evolve", [&] {
    parallel_for(times.size(), threads, [&](std::size_t j) {
      auto evolved = evolve_to(initial, blocks, times[j], rc.hbar);
      const auto psi = assemble_matrix(evolved, blocks, grid, times[j]);
      run.snapshots[j] = schmidt_spectrum(psi, rc.report_count);
      conserved[j] = measure_conserved(psi, evolved, blocks, rc);
      if (options.keep_blocks) run.states[j] = std::move(evolved);
    });
  });

  timer.run("track", [&] {
    run.tracks = track_modes(run.snapshots);
    run.conservation = conserved_report(conserved, rc);
  });

  run.series.reserve(times.size());
  for (const auto& snap : run.snapshots) {
    SpectrumRow row;
    row.t = snap.time;
    row.t_over_t0 = snap.time / run.t0;
    row.p = snap.probabilities;
    const auto pe = purity_entropy(snap.probabilities, snap.residual);
    row.purity = pe.purity;
    row.entropy = pe.entropy;
    row.residual = snap.residual;
    run.series.push_back(std::move(row));
  }

  if (!run.conservation.ok()) {
    std::string msg = "conservation check failed:";
    for (const auto& f : run.conservation.flags) msg += " " + f + ";";
    throw NumericError(msg);
  }

  timer.run("realspace", [&] {
    run.densities = mode_densities(run, rc.modes.samples, rc.modes.ranks, mode_resolution(rc), threads);
  });

  if (options.keep_blocks) run.blocks = std::move(blocks);
  return run;
}

}  // namespace entspec
