#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "entspec/lattice.hpp"

namespace entspec {

/// Position-space density of one mode on the uniform M^d grid over
/// [-L/2, L/2)^d. Values are row-major with the first axis slowest.
struct ModeDensity {
  double time = 0.0;
  int rank = 0;  // 1-based
  double probability = 1.0;
  int dim = 1;
  int resolution = 0;
  double box_length = 1.0;
  bool weighted = false;  // values hold p·|ψ|² instead of |ψ|²
  std::vector<double> values;

  double coordinate(int m) const { return -0.5 * box_length + box_length * m / resolution; }
  double cell_volume() const;
};

/// ψ(x) = L^{-d/2} Σ_n c_n exp(2πi n·x/L) on the M^d grid, density |ψ|².
/// Throws ConfigError if M < 2(2 n_max + 1).
ModeDensity mode_to_position(const Eigen::VectorXcd& mode, const SimConfig& cfg, int resolution);

/// Copy scaled by the mode's probability.
ModeDensity weighted(const ModeDensity& density);

/// Σ ρ · (L/M)^d.
double riemann_sum(const ModeDensity& density);

inline constexpr double kPeakThreshold = 0.1;

/// Strict local maxima (periodic neighbours; 8 neighbours in 2D) at least
/// threshold_frac times the global maximum. A maximum must exceed each
/// neighbour by more than 1e-12 of the global maximum.
int count_peaks(const ModeDensity& density, double threshold_frac = kPeakThreshold);

enum class ScatterSide { transmitted, reflected, mixed };

std::string_view to_string(ScatterSide side);

/// Mass on each side of the midpoint of the initial packet centres (first
/// axis, wrapped). ≥ 90% on particle 1's direction of travel: transmitted;
/// ≥ 90% behind: reflected.
ScatterSide split_transmitted_reflected(const ModeDensity& density, const SimConfig& cfg);

/// Fractions (ahead, behind) used by split_transmitted_reflected.
std::pair<double, double> side_fractions(const ModeDensity& density, const SimConfig& cfg);

}  // namespace entspec
