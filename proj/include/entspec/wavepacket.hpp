#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "entspec/blocks.hpp"
#include "entspec/lattice.hpp"

namespace entspec {

/// Single-particle amplitudes over the momentum grid (grid index order).
using PacketVector = Eigen::VectorXcd;

/// Two-particle state: rows index particle 1's grid, columns particle 2's.
struct CoefficientMatrix {
  double time = 0.0;
  Eigen::MatrixXcd amplitudes;
};

/// Per-block coefficients in that block's Hamiltonian eigenbasis.
using BlockState = std::vector<Eigen::VectorXcd>;

/// c_n ∝ exp(-|N_c - n|²/4σ²) exp(-2πi X_c·n/L), normalized, with the
/// amplitude at the grid point nearest N_c real positive. Throws ConfigError
/// when the envelope mass beyond the grid is not below 1e-12.
PacketVector packet_coefficients(const PacketSpec& packet, const SimConfig& cfg);

CoefficientMatrix product_state(const PacketVector& first, const PacketVector& second);

/// a_b = U_bᵀ Ψ|_b for every block.
BlockState project_to_blocks(const CoefficientMatrix& psi, std::span<const MomentumBlock> blocks,
                             int threads = 1);

}  // namespace entspec
