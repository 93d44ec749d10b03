#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "entspec/lattice.hpp"
#include "entspec/linalg.hpp"

namespace entspec {

/// Conserved total momentum n1 + n2 of a block.
struct BlockKey {
  IntVec total{0, 0};

  bool operator==(const BlockKey&) const = default;
};

/// Two-particle basis of one block: entry k is the state
/// (grid[first[k]], grid[second[k]]), ordered lexicographically in n1.
struct BlockBasis {
  BlockKey key;
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> second;

  std::size_t size() const { return first.size(); }
};

struct MomentumBlock {
  BlockKey key;
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> second;
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd modes;     // columns are eigenvectors in the block basis

  std::size_t size() const { return first.size(); }
};

struct BlockStats {
  std::size_t count = 0;
  std::size_t max_size = 0;
  std::uint64_t total_dimension = 0;
};

/// Π_c (2 n_max + 1 - |N_c|), or 0 when the key is outside the range.
std::size_t block_size(IntVec total, int n_max, int dim);

std::vector<BlockBasis> enumerate_blocks(const SimConfig& cfg);

/// V̂(Δn) for every Δn in [-2 n_max, 2 n_max]^d, computed once.
class PotentialTable {
 public:
  explicit PotentialTable(const SimConfig& cfg);

  double operator()(IntVec dn) const {
    const auto c0 = static_cast<std::size_t>(dn[0] + reach_);
    if (dim_ == 1) return values_[c0];
    return values_[c0 * side_ + static_cast<std::size_t>(dn[1] + reach_)];
  }

 private:
  int dim_;
  int reach_;
  std::size_t side_;
  std::vector<double> values_;
};

/// (2π²ħ²/L²)(|n1|²/m1 + |n2|²/m2)
double kinetic_energy(const SimConfig& cfg, IntVec n1, IntVec n2);

/// Dense block Hamiltonian: kinetic diagonal plus V̂(n1' - n1) everywhere.
Eigen::MatrixXd assemble_block(const SimConfig& cfg, const PotentialTable& potential,
                               const BlockBasis& basis);

/// Ascending eigenpairs, each eigenvector's largest-magnitude component made
/// positive (lowest index on ties). Throws NumericError if any residual
/// ‖H u - E u‖ exceeds 1e-8 ‖H‖.
linalg::SymmetricEigen diagonalize_block(const Eigen::MatrixXd& hamiltonian);

/// Enumerate, assemble and diagonalize every block, in parallel over blocks.
std::vector<MomentumBlock> build_blocks(const SimConfig& cfg, int threads);

BlockStats block_stats(std::span<const MomentumBlock> blocks);
BlockStats block_stats(std::span<const BlockBasis> blocks);

}  // namespace entspec
