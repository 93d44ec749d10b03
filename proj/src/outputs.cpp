#include "entspec/outputs.hpp"

#include <algorithm>
#include <fstream>

#include "entspec/config_io.hpp"
#include "entspec/errors.hpp"
#include "entspec/hashing.hpp"
#include "entspec/kernels.hpp"
#include "json.hpp"

namespace entspec {

namespace {

using json = nlohmann::json;

json vec_json(const RealVec& v, int dim) {
  return dim == 1 ? json(v[0]) : json::array({v[0], v[1]});
}

json scales_json(const DerivedScales& s) {
  return {{"delta_p", s.delta_p},   {"delta_x", s.delta_x}, {"v_central", s.v_central},
          {"t0", s.t0},             {"ratio_sigma_nc", s.ratio_sigma_nc}};
}

json packet_json(const PacketSpec& p, int dim) {
  return {{"N_c", vec_json(p.central_momentum, dim)},
          {"X_c", vec_json(p.position, dim)},
          {"sigma", p.sigma}};
}

json config_json(const SimConfig& c) {
  json j;
  j["d"] = c.dim;
  j["L"] = c.box_length;
  j["m1"] = c.mass1;
  j["m2"] = c.mass2;
  j["hbar"] = c.hbar;
  j["n_max"] = c.n_max;
  j["packet1"] = packet_json(c.packet1, c.dim);
  j["packet2"] = packet_json(c.packet2, c.dim);
  j["potential"] = {{"kind", c.potential.kind == PotentialKind::delta ? "delta" : "gaussian"},
                    {"A", c.potential.strength},
                    {"w", c.potential.width}};
  if (c.strength_target) {
    j["potential"]["T"] = c.strength_target->transmission;
    j["potential"]["counterterm"] = c.strength_target->counterterm;
  }
  j["run"] = {{"n_samples", c.n_samples},
              {"K", c.report_count},
              {"t_end", end_time(c)},
              {"mode_samples", c.modes.samples},
              {"mode_ranks", c.modes.ranks},
              {"mode_resolution", mode_resolution(c)}};
  if (c.t_end_over_t0) j["run"]["t_end_t0"] = *c.t_end_over_t0;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("error writing " + path.string());
}

int sample_index(const RunResult& run, double t) {
  for (std::size_t j = 0; j < run.snapshots.size(); ++j) {
    if (run.snapshots[j].time == t) return static_cast<int>(j);
  }
  throw IoError("density time is not on the run's sample grid");
}

}  // namespace

std::string spectrum_csv(const RunResult& run) {
  const int k = run.resolved.report_count;
  std::string out = "t,t/t0";
  for (int i = 1; i <= k; ++i) out += ",p" + std::to_string(i);
  out += ",purity,entropy,residual\n";
  for (const auto& row : run.series) {
    out += format_double(row.t);
    out += ',' + format_double(row.t_over_t0);
    for (int i = 0; i < k; ++i) {
      const auto u = static_cast<std::size_t>(i);
      out += ',' + format_double(u < row.p.size() ? row.p[u] : 0.0);
    }
    out += ',' + format_double(row.purity);
    out += ',' + format_double(row.entropy);
    out += ',' + format_double(row.residual);
    out += '\n';
  }
  return out;
}

std::string density_csv(const ModeDensity& d) {
  std::string out = d.dim == 1 ? "x,density\n" : "x,y,density\n";
  const int m = d.resolution;
  if (d.dim == 1) {
    for (int i = 0; i < m; ++i) {
      out += format_double(d.coordinate(i)) + ',' +
             format_double(d.values[static_cast<std::size_t>(i)]) + '\n';
    }
    return out;
  }
  for (int i = 0; i < m; ++i) {
    const std::string x = format_double(d.coordinate(i)) + ',';
    for (int j = 0; j < m; ++j) {
      out += x + format_double(d.coordinate(j)) + ',' +
             format_double(d.values[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                                    static_cast<std::size_t>(j)]) +
             '\n';
    }
  }
  return out;
}

std::string density_filename(int sample, int rank) {
  return "modes/t" + std::to_string(sample) + "_r" + std::to_string(rank) + ".csv";
}

std::string manifest_json(const RunResult& run, int threads,
                          const std::vector<std::pair<std::string, std::string>>& hashes) {
  json j;
  j["config"] = config_json(run.config);
  j["config_text"] = emit_config(run.config);
  j["resolved_strength"] = run.resolved.potential.strength;
  j["derived"] = {{"particle1", scales_json(run.scales1)}, {"particle2", scales_json(run.scales2)}};
  j["blocks"] = {{"count", run.stats.count},
                 {"max_size", run.stats.max_size},
                 {"total_dimension", run.stats.total_dimension},
                 {"cache", run.cache_status}};
  json timings = json::object();
  for (const auto& [phase, seconds] : run.timings) timings[phase] = seconds;
  j["timings_s"] = timings;
  const ConservationTolerances tol;
  j["tolerances"] = {{"norm", tol.norm},
                     {"energy_relative", tol.energy},
                     {"momentum_relative", tol.momentum},
                     {"peak_threshold", kPeakThreshold},
                     {"tracking_min_overlap", 0.5}};
  j["conservation"] = {{"norm_drift", run.conservation.norm_drift},
                       {"energy_drift", run.conservation.energy_drift},
                       {"momentum_drift", run.conservation.momentum_drift}};
  json ambiguous = json::array();
  for (std::size_t i = 0; i < run.tracks.size(); ++i) {
    if (run.tracks[i].ambiguous) ambiguous.push_back(i);
  }
  j["tracking"] = {{"ambiguous_steps", ambiguous},
                   {"swaps_1_2", run.tracks.empty() ? json::array()
                                                    : json(rank_swaps(run.tracks, 0, 1))}};
  json warnings = json::array();
  for (const auto& w : run.warnings) warnings.push_back(w.message);
  j["warnings"] = warnings;
  json h = json::object();
  for (const auto& [name, digest] : hashes) h[name] = digest;
  j["hashes"] = h;
  j["runtime"] = {{"threads", threads}, {"simd", simd::kernels().name}};
  return j.dump(2) + '\n';
}

std::vector<std::string> write_outputs(const RunResult& run, const std::filesystem::path& out_dir,
                                       int threads) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  bool made_modes_dir = false;
  try {
    fs::create_directories(out_dir);
    std::vector<std::pair<std::string, std::string>> hashes;
    auto emit = [&](const std::string& rel, const std::string& text) {
      write_file(out_dir / rel, text);
      written.push_back(rel);
      hashes.emplace_back(rel, sha256_hex(text));
    };
    emit("spectrum.csv", spectrum_csv(run));
    if (!run.densities.empty()) {
      made_modes_dir = fs::create_directories(out_dir / "modes");
      for (const auto& d : run.densities) {
        emit(density_filename(sample_index(run, d.time), d.rank), density_csv(d));
      }
    }
    std::sort(hashes.begin(), hashes.end());
    const std::string manifest = manifest_json(run, threads, hashes);
    write_file(out_dir / "manifest.json", manifest);
    written.push_back("manifest.json");
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& rel : written) fs::remove(out_dir / rel, ec);
    fs::remove(out_dir / "manifest.json", ec);
    if (made_modes_dir) fs::remove(out_dir / "modes", ec);
    if (dynamic_cast<const IoError*>(&e)) throw;
    throw IoError(std::string("writing outputs: ") + e.what());
  }
  return written;
}

}  // namespace entspec
