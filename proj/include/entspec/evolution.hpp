#pragma once

#include <span>
#include <string>
#include <vector>

#include "entspec/blocks.hpp"
#include "entspec/wavepacket.hpp"

namespace entspec {

/// a_n(t) = a_n(0) exp(-i E_n t / ħ), block by block.
BlockState evolve_to(const BlockState& state, std::span<const MomentumBlock> blocks, double t,
                     double hbar);

/// Ψ(t) from block coefficients: U_b a_b scattered to each block's basis.
CoefficientMatrix assemble_matrix(const BlockState& state, std::span<const MomentumBlock> blocks,
                                  std::size_t grid_size, double t);

struct ConservedSample {
  double time = 0.0;
  double norm = 0.0;
  double energy_blocks = 0.0;  // Σ E |a|² from the block coefficients
  double energy_state = 0.0;   // ⟨Ψ(t)|H|Ψ(t)⟩ re-projected from the matrix
  RealVec total_momentum{0.0, 0.0};
};

ConservedSample measure_conserved(const CoefficientMatrix& psi, const BlockState& evolved,
                                  std::span<const MomentumBlock> blocks, const SimConfig& cfg);

struct ConservationTolerances {
  double norm = 1e-10;
  double energy = 1e-9;
  double momentum = 1e-9;
};

/// Drifts over a sample series. Energy drift is relative to |⟨H⟩(0)|;
/// momentum drift is relative to max(|⟨P⟩(0)|, 2πħ/L) so that a zero total
/// momentum stays well-defined.
struct ConservedReport {
  std::vector<ConservedSample> samples;
  double norm_drift = 0.0;
  double energy_drift = 0.0;
  double momentum_drift = 0.0;
  std::vector<std::string> flags;

  bool ok() const { return flags.empty(); }
};

ConservedReport conserved_report(std::span<const ConservedSample> samples, const SimConfig& cfg,
                                 const ConservationTolerances& tolerances = {});

}  // namespace entspec
