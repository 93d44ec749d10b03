#include "entspec/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "entspec/errors.hpp"
#include "entspec/kernels.hpp"

namespace entspec {

BlockState evolve_to(const BlockState& state, std::span<const MomentumBlock> blocks, double t,
                     double hbar) {
  BlockState out(state.size());
  for (std::size_t b = 0; b < state.size(); ++b) {
    const auto& energies = blocks[b].energies;
    out[b].resize(state[b].size());
    for (Eigen::Index k = 0; k < state[b].size(); ++k) {
      out[b](k) = state[b](k) * std::polar(1.0, -energies(k) * t / hbar);
    }
  }
  return out;
}

CoefficientMatrix assemble_matrix(const BlockState& state, std::span<const MomentumBlock> blocks,
                                  std::size_t grid_size, double t) {
  const auto& kern = simd::kernels();
  const auto n = static_cast<Eigen::Index>(grid_size);
  CoefficientMatrix psi;
  psi.time = t;
  psi.amplitudes = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd local;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const MomentumBlock& block = blocks[b];
    local.resize(static_cast<Eigen::Index>(block.size()));
    kern.real_gemv(block.size(), block.size(), block.modes.data(),
                   static_cast<std::size_t>(block.modes.rows()),
                   reinterpret_cast<const double*>(state[b].data()),
                   reinterpret_cast<double*>(local.data()));
    for (std::size_t k = 0; k < block.size(); ++k) {
      psi.amplitudes(block.first[k], block.second[k]) = local(static_cast<Eigen::Index>(k));
    }
  }
  return psi;
}

ConservedSample measure_conserved(const CoefficientMatrix& psi, const BlockState& evolved,
                                  std::span<const MomentumBlock> blocks, const SimConfig& cfg) {
  const auto& kern = simd::kernels();
  ConservedSample s;
  s.time = psi.time;
  s.norm = std::sqrt(kern.sum_abs2(static_cast<std::size_t>(psi.amplitudes.size()),
                                   reinterpret_cast<const double*>(psi.amplitudes.data())));

  Eigen::VectorXcd local;
  Eigen::VectorXcd projected;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const MomentumBlock& block = blocks[b];
    const auto size = static_cast<Eigen::Index>(block.size());
    for (Eigen::Index k = 0; k < size; ++k) {
      s.energy_blocks += block.energies(k) * std::norm(evolved[b](k));
    }
    local.resize(size);
    projected.resize(size);
    for (std::size_t k = 0; k < block.size(); ++k) {
      local(static_cast<Eigen::Index>(k)) = psi.amplitudes(block.first[k], block.second[k]);
    }
    kern.real_gemv_t(block.size(), block.size(), block.modes.data(),
                     static_cast<std::size_t>(block.modes.rows()),
                     reinterpret_cast<const double*>(local.data()),
                     reinterpret_cast<double*>(projected.data()));
    for (Eigen::Index k = 0; k < size; ++k) {
      s.energy_state += block.energies(k) * std::norm(projected(k));
    }
  }

  const MomentumGrid grid(cfg.dim, cfg.n_max);
  const double quantum = 2.0 * std::numbers::pi * cfg.hbar / cfg.box_length;
  std::vector<IntVec> points(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) points[i] = grid.point(i);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = std::norm(psi.amplitudes(static_cast<Eigen::Index>(i),
                                                static_cast<Eigen::Index>(j)));
      s.total_momentum[0] += w * (points[i][0] + points[j][0]);
      s.total_momentum[1] += w * (points[i][1] + points[j][1]);
    }
  }
  s.total_momentum[0] *= quantum;
  s.total_momentum[1] *= quantum;
  return s;
}

ConservedReport conserved_report(std::span<const ConservedSample> samples, const SimConfig& cfg,
                                 const ConservationTolerances& tolerances) {
  if (samples.size() < 2) throw NumericError("conserved_report needs at least two samples");
  ConservedReport report;
  report.samples.assign(samples.begin(), samples.end());

  const ConservedSample& first = samples.front();
  const double energy_scale = std::max(std::abs(first.energy_blocks), 1e-300);
  const double momentum_scale =
      std::max(std::hypot(first.total_momentum[0], first.total_momentum[1]),
               2.0 * std::numbers::pi * cfg.hbar / cfg.box_length);

  for (const auto& s : samples) {
    report.norm_drift = std::max(report.norm_drift, std::abs(s.norm - 1.0));
    report.energy_drift =
        std::max({report.energy_drift, std::abs(s.energy_blocks - first.energy_blocks) / energy_scale,
                  std::abs(s.energy_state - first.energy_blocks) / energy_scale});
    report.momentum_drift =
        std::max(report.momentum_drift,
                 std::hypot(s.total_momentum[0] - first.total_momentum[0],
                            s.total_momentum[1] - first.total_momentum[1]) /
                     momentum_scale);
  }
  if (report.norm_drift > tolerances.norm) report.flags.emplace_back("norm drift");
  if (report.energy_drift > tolerances.energy) report.flags.emplace_back("energy drift");
  if (report.momentum_drift > tolerances.momentum) report.flags.emplace_back("momentum drift");
  return report;
}

}  // namespace entspec
