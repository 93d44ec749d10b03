#include "entspec/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "entspec/errors.hpp"
#include "entspec/kernels.hpp"
#include "entspec/parallel.hpp"

namespace entspec {

PacketVector packet_coefficients(const PacketSpec& packet, const SimConfig& cfg) {
  const double tail = envelope_tail_mass(packet, cfg.dim, cfg.n_max);
  if (!(tail < kMaxTailMass)) {
    throw ConfigError("packet envelope mass outside the grid is " + std::to_string(tail) +
                      " (needs < 1e-12; raise n_max)");
  }

  const MomentumGrid grid(cfg.dim, cfg.n_max);
  const double inv_width = 1.0 / (4.0 * packet.sigma * packet.sigma);
  const double phase_scale = -2.0 * std::numbers::pi / cfg.box_length;

  IntVec nearest{0, 0};
  for (std::size_t c = 0; c < static_cast<std::size_t>(cfg.dim); ++c) {
    nearest[c] = std::clamp(static_cast<int>(std::lround(packet.central_momentum[c])),
                            -cfg.n_max, cfg.n_max);
  }
  auto phase_at = [&](IntVec n) {
    double arg = 0.0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(cfg.dim); ++c) {
      arg += packet.position[c] * n[c];
    }
    return phase_scale * arg;
  };
  const double reference = phase_at(nearest);

  PacketVector c(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const IntVec n = grid.point(i);
    double dist2 = 0.0;
    for (std::size_t k = 0; k < static_cast<std::size_t>(cfg.dim); ++k) {
      const double d = packet.central_momentum[k] - n[k];
      dist2 += d * d;
    }
    c(static_cast<Eigen::Index>(i)) =
        std::exp(-dist2 * inv_width) * std::polar(1.0, phase_at(n) - reference);
  }
  c /= c.norm();
  return c;
}

CoefficientMatrix product_state(const PacketVector& first, const PacketVector& second) {
  CoefficientMatrix psi;
  psi.amplitudes = first * second.transpose();
  return psi;
}

BlockState project_to_blocks(const CoefficientMatrix& psi, std::span<const MomentumBlock> blocks,
                             int threads) {
  const auto& kern = simd::kernels();
  BlockState state(blocks.size());
  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    const MomentumBlock& block = blocks[b];
    const auto n = static_cast<Eigen::Index>(block.size());
    Eigen::VectorXcd local(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      local(k) = psi.amplitudes(block.first[idx], block.second[idx]);
    }
    state[b].resize(n);
    kern.real_gemv_t(block.size(), block.size(), block.modes.data(),
                     static_cast<std::size_t>(block.modes.rows()),
                     reinterpret_cast<const double*>(local.data()),
                     reinterpret_cast<double*>(state[b].data()));
  });
  return state;
}

}  // namespace entspec
