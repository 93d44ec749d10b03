#pragma once

#include <string>
#include <vector>

#include "entspec/simulation.hpp"

namespace entspec {

inline constexpr double kConvergenceTolerance = 5e-3;
inline constexpr int kConvergenceRanks = 5;

/// Same physics with n_max × 1.5 (rounded down, at least n_max + 1).
SimConfig refined_config(const SimConfig& cfg);

/// Same physics in a box twice as long: L, N_c, σ and n_max doubled; X_c, w,
/// A and times unchanged.
SimConfig doubled_box_config(const SimConfig& cfg);

/// max over samples and ranks 1..ranks of |p_a - p_b|. Series must share
/// the time grid.
double max_deviation(const std::vector<SpectrumRow>& a, const std::vector<SpectrumRow>& b,
                     int ranks = kConvergenceRanks);

struct ConvergenceCheck {
  std::string name;
  int n_max = 0;
  double box_length = 0.0;
  double deviation = 0.0;
  bool pass = false;
};

struct ConvergenceReport {
  std::vector<ConvergenceCheck> checks;
  bool pass() const;
};

ConvergenceReport convergence_check(const SimConfig& cfg, const RunOptions& options = {});

}  // namespace entspec
