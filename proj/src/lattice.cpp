#include "entspec/lattice.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "entspec/errors.hpp"

namespace entspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Spreading-regime and overlap thresholds; the physics only asks for σ ≪ n_c.
constexpr double kMaxSigmaRatio = 0.25;
constexpr double kOverlapWidths = 4.0;

double minimal_image(double dx, double box) { return dx - box * std::round(dx / box); }

void check_packet(const SimConfig& cfg, const PacketSpec& packet, const char* name,
                  std::vector<Diagnostic>& out) {
  auto error = [&](const std::string& what) {
    out.push_back({Severity::error, std::string(name) + ": " + what});
  };
  if (!(packet.sigma > 0.0)) error("sigma must be positive");
  for (int c = 0; c < 2; ++c) {
    const bool active = c < cfg.dim;
    const double nc = packet.central_momentum[static_cast<std::size_t>(c)];
    const double xc = packet.position[static_cast<std::size_t>(c)];
    if (!active) {
      if (nc != 0.0 || xc != 0.0) error("second component given for a 1D configuration");
      continue;
    }
    if (!std::isfinite(nc) || !(std::abs(nc) < cfg.n_max)) {
      error("central momentum component " + std::to_string(nc) + " outside (-n_max, n_max)");
    }
    if (cfg.box_length > 0.0 && !(std::abs(xc) < 0.5 * cfg.box_length)) {
      error("position component " + std::to_string(xc) + " outside (-L/2, L/2)");
    }
  }
}

}  // namespace

bool operator==(const PotentialSpec& a, const PotentialSpec& b) {
  return a.kind == b.kind && a.strength == b.strength && a.width == b.width;
}

bool operator==(const SimConfig& a, const SimConfig& b) {
  return a.dim == b.dim && a.box_length == b.box_length && a.mass1 == b.mass1 &&
         a.mass2 == b.mass2 && a.hbar == b.hbar && a.n_max == b.n_max &&
         a.potential == b.potential && a.strength_target == b.strength_target &&
         a.packet1 == b.packet1 && a.packet2 == b.packet2 && a.t_end == b.t_end &&
         a.t_end_over_t0 == b.t_end_over_t0 && a.n_samples == b.n_samples &&
         a.report_count == b.report_count && a.modes == b.modes;
}

int mode_resolution(const SimConfig& cfg) {
  return cfg.modes.resolution > 0 ? cfg.modes.resolution : 4 * (2 * cfg.n_max + 1);
}

std::vector<Diagnostic> validate_config(const SimConfig& cfg) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string what) { out.push_back({Severity::error, std::move(what)}); };
  auto warning = [&](std::string what) { out.push_back({Severity::warning, std::move(what)}); };

  if (cfg.dim != 1 && cfg.dim != 2) error("dimension must be 1 or 2");
  if (!(cfg.box_length > 0.0)) error("box length L must be positive");
  if (!(cfg.mass1 > 0.0) || !(cfg.mass2 > 0.0)) error("masses must be positive");
  if (!(cfg.hbar > 0.0)) error("hbar must be positive");
  if (cfg.n_max < 1) error("n_max must be at least 1");
  if (cfg.n_samples < 2) error("n_samples must be at least 2");
  if (cfg.t_end && cfg.t_end_over_t0) error("give either t_end or t_end_t0, not both");
  if ((cfg.t_end && !(*cfg.t_end >= 0.0)) || (cfg.t_end_over_t0 && !(*cfg.t_end_over_t0 >= 0.0))) {
    error("end time must be non-negative");
  }
  if (!out.empty()) return out;

  const double grid = std::pow(2.0 * cfg.n_max + 1.0, cfg.dim);
  if (cfg.report_count < 1 || cfg.report_count > grid) {
    error("report count K must lie in [1, (2 n_max + 1)^d]");
  }
  for (int j : cfg.modes.samples) {
    if (j < 0 || j >= cfg.n_samples) error("mode sample index out of range: " + std::to_string(j));
  }
  for (int r : cfg.modes.ranks) {
    if (r < 1 || r > cfg.report_count) error("mode rank out of range [1, K]: " + std::to_string(r));
  }
  if (cfg.modes.resolution != 0 && cfg.modes.resolution < 2 * (2 * cfg.n_max + 1)) {
    error("mode resolution must be 0 or at least 2 (2 n_max + 1)");
  }

  const auto& pot = cfg.potential;
  if (pot.kind == PotentialKind::gaussian && !(pot.width > 0.0)) {
    error("gaussian potential needs a positive width");
  }
  if (!std::isfinite(pot.strength)) error("potential strength must be finite");
  if (cfg.strength_target) {
    const double t = cfg.strength_target->transmission;
    if (!(t > 0.0 && t < 1.0)) error("target transmission must lie in (0, 1)");
    if (cfg.dim != 1) error("a target transmission is only defined in 1D");
    if (cfg.strength_target->counterterm && pot.kind != PotentialKind::delta) {
      error("the cutoff counterterm applies to the delta potential only");
    }
  }
  if (pot.kind == PotentialKind::gaussian && pot.width >= 0.1 * cfg.box_length) {
    warning("gaussian width is not short-range compared to the box (w >= L/10)");
  }

  check_packet(cfg, cfg.packet1, "packet1", out);
  check_packet(cfg, cfg.packet2, "packet2", out);
  if (has_errors(out)) return out;
  for (const auto* packet : {&cfg.packet1, &cfg.packet2}) {
    const double tail = envelope_tail_mass(*packet, cfg.dim, cfg.n_max);
    if (!(tail < kMaxTailMass)) {
      error("packet envelope mass outside the grid is " + std::to_string(tail) +
            " (needs < 1e-12; raise n_max)");
      return out;
    }
  }

  const double l = cfg.box_length;
  for (const auto* packet : {&cfg.packet1, &cfg.packet2}) {
    const double nc = std::abs(packet->central_momentum[0]);
    if (nc == 0.0 || packet->sigma / nc > kMaxSigmaRatio) {
      warning("wavepacket spreading regime violated (sigma/n_c > 0.25)");
      break;
    }
  }

  const double dx1 = l / (4.0 * std::numbers::pi * cfg.packet1.sigma);
  const double dx2 = l / (4.0 * std::numbers::pi * cfg.packet2.sigma);
  double sep2 = 0.0;
  for (std::size_t c = 0; c < static_cast<std::size_t>(cfg.dim); ++c) {
    const double d = minimal_image(cfg.packet1.position[c] - cfg.packet2.position[c], l);
    sep2 += d * d;
  }
  if (std::sqrt(sep2) < kOverlapWidths * std::max(dx1, dx2)) {
    warning("packets initially overlap (center separation < 4 delta_x)");
  }

  const double t0 = [&] {
    const double nc = std::abs(cfg.packet1.central_momentum[0]);
    return nc > 0.0 ? derived_scales(cfg, 1).t0 : 0.0;
  }();
  if (!cfg.t_end && t0 == 0.0) error("default end time needs a nonzero packet1 momentum");
  if (has_errors(out)) return out;

  const double t_end = end_time(cfg);
  const double v1 = kTwoPi * cfg.hbar * cfg.packet1.central_momentum[0] / (l * cfg.mass1);
  const double v2 = kTwoPi * cfg.hbar * cfg.packet2.central_momentum[0] / (l * cfg.mass2);
  const double x1 = cfg.packet1.position[0] + v1 * t_end;
  const double x2 = cfg.packet2.position[0] + v2 * t_end;
  if (std::abs(x1) + 2.0 * dx1 > 0.5 * l || std::abs(x2) + 2.0 * dx2 > 0.5 * l) {
    warning("free packet motion reaches the box edge before t_end");
  }

  // Relative coordinate on the ring: first encounter at d0/v_rel, the next
  // periodic image L/v_rel later.
  const double v_rel = std::abs(v1 - v2);
  if (v_rel > 0.0) {
    const double d0 = std::abs(cfg.packet1.position[0] - cfg.packet2.position[0]);
    const double approach = (cfg.packet1.position[0] - cfg.packet2.position[0]) * (v1 - v2) < 0.0
                                ? d0
                                : l - d0;
    const double next = (approach + l) / v_rel;
    const double margin = 2.0 * std::hypot(dx1, dx2) / v_rel;
    if (t_end > next - margin) {
      warning("periodic-image recollision of the packets before t_end");
    }
  }
  return out;
}

double envelope_tail_mass(const PacketSpec& packet, int dim, int n_max) {
  double log_inside = 0.0;
  for (std::size_t c = 0; c < static_cast<std::size_t>(dim); ++c) {
    const double center = packet.central_momentum[c];
    const double inv = 1.0 / (2.0 * packet.sigma * packet.sigma);
    auto weight = [&](int n) { return std::exp(-(n - center) * (n - center) * inv); };
    double inside = 0.0;
    for (int n = -n_max; n <= n_max; ++n) inside += weight(n);
    double outside = 0.0;
    for (int n = n_max + 1;; ++n) {
      const double w = weight(n) + weight(-n);
      outside += w;
      if (n > center + 2.0 && n > -center + 2.0 && w < 1e-40) break;
    }
    log_inside += std::log1p(-outside / (inside + outside));
  }
  return -std::expm1(log_inside);
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) return true;
  }
  return false;
}

std::vector<Diagnostic> require_valid(const SimConfig& cfg) {
  auto diagnostics = validate_config(cfg);
  std::ostringstream errors;
  std::vector<Diagnostic> warnings;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) {
      errors << (errors.tellp() > 0 ? "; " : "") << d.message;
    } else {
      warnings.push_back(d);
    }
  }
  if (errors.tellp() > 0) throw ConfigError("invalid configuration: " + errors.str());
  return warnings;
}

DerivedScales derived_scales(const SimConfig& cfg, int particle) {
  const PacketSpec& packet = particle == 2 ? cfg.packet2 : cfg.packet1;
  const double mass = particle == 2 ? cfg.mass2 : cfg.mass1;
  const double nc = std::abs(packet.central_momentum[0]);
  const double xc = std::abs(packet.position[0]);
  if (nc == 0.0) throw NumericError("t0 is undefined for zero central momentum");

  const double l = cfg.box_length;
  DerivedScales s;
  s.delta_p = kTwoPi * cfg.hbar * packet.sigma / l;
  s.delta_x = l / (4.0 * std::numbers::pi * packet.sigma);
  s.v_central = kTwoPi * cfg.hbar * nc / (l * mass);
  s.t0 = xc * l * mass / (kTwoPi * cfg.hbar * nc);
  s.ratio_sigma_nc = packet.sigma / nc;
  return s;
}

double relative_momentum(const SimConfig& cfg) {
  const double p1 = kTwoPi * cfg.hbar * cfg.packet1.central_momentum[0] / cfg.box_length;
  const double p2 = kTwoPi * cfg.hbar * cfg.packet2.central_momentum[0] / cfg.box_length;
  return reduced_mass(cfg.mass1, cfg.mass2) * std::abs(p1 / cfg.mass1 - p2 / cfg.mass2);
}

void resolve_strength(SimConfig& cfg) {
  if (!cfg.strength_target) return;
  const auto& target = *cfg.strength_target;
  const double mu = reduced_mass(cfg.mass1, cfg.mass2);
  const double p = relative_momentum(cfg);
  if (cfg.potential.kind == PotentialKind::delta) {
    const double physical = solve_strength_for_T(target.transmission, mu, p, cfg.hbar);
    cfg.potential.strength =
        target.counterterm
            ? lattice_contact_strength(physical, mu, p, cfg.hbar, cfg.box_length, cfg.n_max)
            : physical;
  } else {
    cfg.potential.strength = solve_gaussian_strength_for_T(target.transmission,
                                                           cfg.potential.width, mu, p, cfg.hbar);
  }
}

double end_time(const SimConfig& cfg) {
  if (cfg.t_end) return *cfg.t_end;
  const double factor = cfg.t_end_over_t0.value_or(kDefaultEndOverT0);
  return factor * derived_scales(cfg, 1).t0;
}

std::vector<double> sample_times(const SimConfig& cfg) {
  const double t_end = end_time(cfg);
  std::vector<double> times(static_cast<std::size_t>(cfg.n_samples));
  const double denom = static_cast<double>(cfg.n_samples - 1);
  for (std::size_t j = 0; j < times.size(); ++j) {
    times[j] = static_cast<double>(j) * t_end / denom;
  }
  return times;
}

MomentumGrid::MomentumGrid(int dim, int n_max) : dim_(dim), n_max_(n_max) {
  if (dim != 1 && dim != 2) throw ConfigError("grid dimension must be 1 or 2");
  if (n_max < 0) throw ConfigError("grid half-width must be non-negative");
  const auto s = static_cast<std::size_t>(side());
  size_ = dim == 1 ? s : s * s;
}

IntVec MomentumGrid::point(std::size_t index) const {
  const auto s = static_cast<std::size_t>(side());
  if (dim_ == 1) return {static_cast<int>(index) - n_max_, 0};
  return {static_cast<int>(index / s) - n_max_, static_cast<int>(index % s) - n_max_};
}

bool MomentumGrid::contains(IntVec n) const {
  if (n[0] < -n_max_ || n[0] > n_max_) return false;
  if (dim_ == 1) return n[1] == 0;
  return n[1] >= -n_max_ && n[1] <= n_max_;
}

std::optional<std::size_t> MomentumGrid::index_of(IntVec n) const {
  if (!contains(n)) return std::nullopt;
  return unchecked_index(n);
}

std::vector<IntVec> momentum_grid(const SimConfig& cfg) {
  const MomentumGrid grid(cfg.dim, cfg.n_max);
  std::vector<IntVec> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = grid.point(i);
  return out;
}

}  // namespace entspec
