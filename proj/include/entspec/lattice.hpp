#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "entspec/potential.hpp"

namespace entspec {

/// Gaussian wavepacket in the discrete momentum basis. Momenta in grid units,
/// position in length units.
struct PacketSpec {
  RealVec central_momentum{0.0, 0.0};
  RealVec position{0.0, 0.0};
  double sigma = 1.0;

  bool operator==(const PacketSpec&) const = default;
};

/// Interaction strength given as a target transmission probability instead of
/// a bare A. Resolved into PotentialSpec::strength by resolve_strength().
struct StrengthTarget {
  double transmission = 0.5;
  bool counterterm = true;

  bool operator==(const StrengthTarget&) const = default;
};

/// Which mode densities a run writes: sample indices (0-based), ranks
/// (1-based) and the grid resolution M per axis (0 picks 4(2 n_max + 1)).
struct ModeOutput {
  std::vector<int> samples;
  std::vector<int> ranks;
  int resolution = 0;

  bool operator==(const ModeOutput&) const = default;
};

struct SimConfig {
  int dim = 1;
  double box_length = 1.0;
  double mass1 = 1.0;
  double mass2 = 1.0;
  double hbar = 1.0;
  int n_max = 1;

  PotentialSpec potential;
  std::optional<StrengthTarget> strength_target;

  PacketSpec packet1;
  PacketSpec packet2;

  // At most one of these is set; neither means t_end = 2·t0 (particle 1).
  std::optional<double> t_end;
  std::optional<double> t_end_over_t0;
  int n_samples = 81;
  int report_count = 20;

  ModeOutput modes;
};

/// Mode grid resolution after applying the default.
int mode_resolution(const SimConfig& cfg);

bool operator==(const PotentialSpec& a, const PotentialSpec& b);
bool operator==(const SimConfig& a, const SimConfig& b);

struct DerivedScales {
  double delta_p = 0.0;
  double delta_x = 0.0;
  double v_central = 0.0;
  double t0 = 0.0;
  double ratio_sigma_nc = 0.0;
};

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity;
  std::string message;
};

inline constexpr double kMaxTailMass = 1e-12;

/// Fraction of the untruncated envelope mass Σ_n exp(-|n - N_c|²/2σ²) that
/// lies outside the grid.
double envelope_tail_mass(const PacketSpec& packet, int dim, int n_max);

std::vector<Diagnostic> validate_config(const SimConfig& cfg);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Throws ConfigError listing every error diagnostic. Returns the warnings.
std::vector<Diagnostic> require_valid(const SimConfig& cfg);

/// Scales for particle 1 or 2. Throws NumericError when n_c = 0.
DerivedScales derived_scales(const SimConfig& cfg, int particle);

/// Relative momentum μ|p1/m1 - p2/m2| along the first axis (physical units).
double relative_momentum(const SimConfig& cfg);

/// Fills potential.strength from strength_target, if one is set.
void resolve_strength(SimConfig& cfg);

inline constexpr double kDefaultEndOverT0 = 2.0;

double end_time(const SimConfig& cfg);

/// Sample times t_j = j · t_end / (n_samples - 1).
std::vector<double> sample_times(const SimConfig& cfg);

/// Integer vectors with every component in [-n_max, n_max], lexicographic
/// (first component most significant). For dim = 1 the second component is 0.
class MomentumGrid {
 public:
  MomentumGrid(int dim, int n_max);

  int dim() const { return dim_; }
  int n_max() const { return n_max_; }
  int side() const { return 2 * n_max_ + 1; }
  std::size_t size() const { return size_; }

  IntVec point(std::size_t index) const;
  bool contains(IntVec n) const;
  std::optional<std::size_t> index_of(IntVec n) const;

  // Caller guarantees contains(n).
  std::size_t unchecked_index(IntVec n) const {
    const auto s = static_cast<std::size_t>(side());
    const auto c0 = static_cast<std::size_t>(n[0] + n_max_);
    return dim_ == 1 ? c0 : c0 * s + static_cast<std::size_t>(n[1] + n_max_);
  }

 private:
  int dim_;
  int n_max_;
  std::size_t size_;
};

std::vector<IntVec> momentum_grid(const SimConfig& cfg);

}  // namespace entspec
