#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entspec/blocks.hpp"
#include "entspec/config_io.hpp"
#include "entspec/convergence.hpp"
#include "entspec/errors.hpp"
#include "entspec/lattice.hpp"
#include "entspec/outputs.hpp"
#include "entspec/parallel.hpp"
#include "entspec/potential.hpp"
#include "entspec/simulation.hpp"
#include "json.hpp"

namespace {

using namespace entspec;

struct Common {
  std::string config;
  std::string out;
  std::optional<int> threads;
  std::optional<int> k;
  std::string cache;
};

void add_common(CLI::App* cmd, Common& c, bool with_out) {
  cmd->add_option("config", c.config, "configuration file")->required();
  if (with_out) cmd->add_option("--out", c.out, "output directory")->required();
  cmd->add_option("--threads", c.threads, "worker threads (default: ENTSPEC_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--k", c.k, "number of tracked modes K")->check(CLI::PositiveNumber);
}

SimConfig load(const Common& c) {
  SimConfig cfg = load_config(c.config);
  if (c.k) cfg.report_count = *c.k;
  return cfg;
}

void print_warnings(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::warning) std::cerr << "warning: " << d.message << '\n';
  }
}

void line(const std::string& key, double value) {
  std::cout << key << " = " << format_double(value) << '\n';
}

int cmd_simulate(const Common& c) {
  const SimConfig cfg = load(c);
  RunOptions opts;
  opts.threads = resolve_threads(c.threads);
  if (!c.cache.empty()) opts.cache_dir = c.cache;
  const auto run = run_simulation(cfg, opts);
  print_warnings(run.warnings);
  const auto files = write_outputs(run, c.out, opts.threads);
  for (const auto& f : files) std::cout << (std::filesystem::path(c.out) / f).string() << '\n';
  return 0;
}

int cmd_oracle(const Common& c) {
  const SimConfig cfg = load(c);
  print_warnings(require_valid(cfg));
  SimConfig resolved = cfg;
  resolve_strength(resolved);

  const double mu = reduced_mass(cfg.mass1, cfg.mass2);
  const double p = relative_momentum(cfg);
  line("reduced_mass", mu);
  line("relative_momentum", p);
  line("A_lattice", resolved.potential.strength);
  if (cfg.dim == 1 && p > 0.0) {
    double t = 0.0;
    if (cfg.potential.kind == PotentialKind::delta) {
      const double a_phys = cfg.strength_target
                                ? solve_strength_for_T(cfg.strength_target->transmission, mu, p,
                                                       cfg.hbar)
                                : cfg.potential.strength;
      line("A_physical", a_phys);
      t = delta_transmission(a_phys, mu, p, cfg.hbar).transmission;
    } else {
      t = gaussian_transmission(resolved.potential.strength, cfg.potential.width, mu, p, cfg.hbar);
    }
    line("T", t);
    line("R", 1.0 - t);
  }
  for (int particle : {1, 2}) {
    const auto& packet = particle == 1 ? cfg.packet1 : cfg.packet2;
    if (packet.central_momentum[0] == 0.0) continue;
    const auto s = derived_scales(resolved, particle);
    const std::string pre = "particle" + std::to_string(particle) + ".";
    line(pre + "delta_p", s.delta_p);
    line(pre + "delta_x", s.delta_x);
    line(pre + "v_central", s.v_central);
    line(pre + "t0", s.t0);
    line(pre + "ratio_sigma_nc", s.ratio_sigma_nc);
  }
  line("t_end", end_time(cfg));
  const auto stats = block_stats(enumerate_blocks(resolved));
  std::cout << "blocks.count = " << stats.count << '\n'
            << "blocks.max_size = " << stats.max_size << '\n'
            << "blocks.total_dimension = " << stats.total_dimension << '\n';
  return 0;
}

int cmd_converge(const Common& c) {
  const SimConfig cfg = load(c);
  print_warnings(require_valid(cfg));
  RunOptions opts;
  opts.threads = resolve_threads(c.threads);
  const auto report = convergence_check(cfg, opts);
  nlohmann::json j = nlohmann::json::array();
  for (const auto& check : report.checks) {
    std::cout << check.name << ": n_max = " << check.n_max
              << ", L = " << format_double(check.box_length)
              << ", max deviation = " << format_double(check.deviation) << ", "
              << (check.pass ? "PASS" : "FAIL") << '\n';
    j.push_back({{"name", check.name},
                 {"n_max", check.n_max},
                 {"L", check.box_length},
                 {"deviation", check.deviation},
                 {"tolerance", kConvergenceTolerance},
                 {"pass", check.pass}});
  }
  std::cout << (report.pass() ? "PASS" : "FAIL") << '\n';
  if (!c.out.empty()) {
    std::filesystem::create_directories(c.out);
    const auto path = std::filesystem::path(c.out) / "convergence.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("cannot write " + path.string());
  }
  return report.pass() ? 0 : 2;
}

int cmd_modes(const Common& c, const std::vector<int>& times, const std::vector<int>& ranks,
              int resolution) {
  SimConfig cfg = load(c);
  cfg.modes.samples = times;
  cfg.modes.ranks = ranks;
  if (resolution > 0) cfg.modes.resolution = resolution;
  RunOptions opts;
  opts.threads = resolve_threads(c.threads);
  if (!c.cache.empty()) opts.cache_dir = c.cache;
  const auto run = run_simulation(cfg, opts);
  print_warnings(run.warnings);
  const auto files = write_outputs(run, c.out, opts.threads);
  for (const auto& f : files) std::cout << (std::filesystem::path(c.out) / f).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement spectrum of two-particle scattering"};
  app.require_subcommand(1);

  Common sim, orc, conv, mod;
  auto* simulate = app.add_subcommand("simulate", "run a configuration and write outputs");
  add_common(simulate, sim, true);
  simulate->add_option("--cache", sim.cache, "directory for cached block eigensystems");

  auto* oracle = app.add_subcommand("oracle", "print analytic T/R, derived scales, block sizes");
  add_common(oracle, orc, false);

  auto* converge = app.add_subcommand("converge", "n_max x1.5 and L x2 convergence checks");
  add_common(converge, conv, false);
  converge->add_option("--out", conv.out, "directory for convergence.json");

  std::vector<int> times, ranks;
  int resolution = 0;
  auto* modes = app.add_subcommand("modes", "write real-space mode densities");
  add_common(modes, mod, true);
  modes->add_option("--cache", mod.cache, "directory for cached block eigensystems");
  modes->add_option("--times", times, "sample indices (0-based)")->required()->delimiter(',');
  modes->add_option("--ranks", ranks, "mode ranks (1-based)")->required()->delimiter(',');
  modes->add_option("--resolution", resolution, "grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*oracle) return cmd_oracle(orc);
    if (*converge) return cmd_converge(conv);
    if (*modes) return cmd_modes(mod, times, ranks, resolution);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
