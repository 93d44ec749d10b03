#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "entspec/wavepacket.hpp"

namespace entspec {

/// Entanglement spectrum of particle 1 at one time.
struct EntanglementSnapshot {
  double time = 0.0;
  std::vector<double> probabilities;  // K largest, descending
  Eigen::MatrixXcd modes;             // grid × K, orthonormal columns
  double residual = 0.0;              // 1 - Σ probabilities
  std::vector<double> spectrum;       // every eigenvalue, descending
};

/// Schmidt decomposition of Ψ by SVD: p_n = s_n², modes are the left
/// singular vectors, each with its largest-magnitude component real positive.
EntanglementSnapshot schmidt_spectrum(const CoefficientMatrix& psi, int k);

/// Same quantities from the reduced density matrix ρ₁ = Ψ Ψᴴ diagonalized
/// directly. Dense N×N; meant for small grids. Throws NumericError if ρ₁ is
/// not Hermitian positive semidefinite within 1e-10.
EntanglementSnapshot reduced_density_oracle(const CoefficientMatrix& psi, int k);

/// Rank correspondence between consecutive snapshots: mode `r` at t_j
/// continues as mode `permutation[r]` at t_{j+1}.
struct ModeTrack {
  std::vector<int> permutation;
  std::vector<double> overlaps;
  bool ambiguous = false;  // some matched overlap below 0.5
};

/// Greedy maximum-overlap matching between each adjacent pair of snapshots.
/// Modes with p < 1e-20 on either side are not matched by overlap (their
/// vectors are arbitrary within the null subspace); they keep rank order.
std::vector<ModeTrack> track_modes(std::span<const EntanglementSnapshot> snapshots);

/// Steps j at which ranks a and b (0-based) exchange places.
std::vector<std::size_t> rank_swaps(std::span<const ModeTrack> tracks, int a, int b);

struct PurityEntropy {
  double purity = 0.0;
  double entropy = 0.0;
  double residual = 0.0;
};

/// Σ p², -Σ p ln p over the given probabilities; the residual is carried
/// along but not included.
PurityEntropy purity_entropy(std::span<const double> probabilities, double residual);

/// Multiplies each column by a unit phase so its largest-magnitude entry is
/// real positive (lowest index on ties).
void fix_column_phases(Eigen::MatrixXcd& columns);

}  // namespace entspec
