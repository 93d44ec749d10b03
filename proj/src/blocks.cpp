#include "entspec/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entspec/errors.hpp"
#include "entspec/parallel.hpp"

namespace entspec {

namespace {

constexpr double kResidualTolerance = 1e-8;

// Range of n1 components compatible with n1 + n2 = total, |n1|,|n2| <= n_max.
std::pair<int, int> component_range(int total, int n_max) {
  return {std::max(-n_max, total - n_max), std::min(n_max, total + n_max)};
}

template <typename Blocks>
BlockStats stats_of(const Blocks& blocks) {
  BlockStats s;
  s.count = blocks.size();
  for (const auto& b : blocks) {
    s.max_size = std::max(s.max_size, b.size());
    s.total_dimension += b.size();
  }
  return s;
}

}  // namespace

std::size_t block_size(IntVec total, int n_max, int dim) {
  std::size_t size = 1;
  for (int c = 0; c < dim; ++c) {
    const int span = 2 * n_max + 1 - std::abs(total[static_cast<std::size_t>(c)]);
    if (span <= 0) return 0;
    size *= static_cast<std::size_t>(span);
  }
  return size;
}

std::vector<BlockBasis> enumerate_blocks(const SimConfig& cfg) {
  const MomentumGrid grid(cfg.dim, cfg.n_max);
  const int n = cfg.n_max;
  const int reach = 2 * n;
  std::vector<BlockBasis> out;

  auto emit = [&](IntVec total) {
    BlockBasis basis;
    basis.key.total = total;
    const std::size_t expected = block_size(total, n, cfg.dim);
    basis.first.reserve(expected);
    basis.second.reserve(expected);
    const auto [lo0, hi0] = component_range(total[0], n);
    const auto [lo1, hi1] = cfg.dim == 2 ? component_range(total[1], n) : std::pair{0, 0};
    for (int a = lo0; a <= hi0; ++a) {
      for (int b = lo1; b <= hi1; ++b) {
        const IntVec n1{a, b};
        const IntVec n2{total[0] - a, total[1] - b};
        basis.first.push_back(static_cast<std::uint32_t>(grid.unchecked_index(n1)));
        basis.second.push_back(static_cast<std::uint32_t>(grid.unchecked_index(n2)));
      }
    }
    out.push_back(std::move(basis));
  };

  for (int t0 = -reach; t0 <= reach; ++t0) {
    if (cfg.dim == 1) {
      emit({t0, 0});
      continue;
    }
    for (int t1 = -reach; t1 <= reach; ++t1) emit({t0, t1});
  }
  return out;
}

PotentialTable::PotentialTable(const SimConfig& cfg)
    : dim_(cfg.dim), reach_(2 * cfg.n_max), side_(static_cast<std::size_t>(4 * cfg.n_max + 1)) {
  values_.resize(dim_ == 1 ? side_ : side_ * side_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const IntVec dn = dim_ == 1 ? IntVec{static_cast<int>(i) - reach_, 0}
                                : IntVec{static_cast<int>(i / side_) - reach_,
                                         static_cast<int>(i % side_) - reach_};
    values_[i] = fourier_coefficient(cfg.potential, dn, cfg.box_length, cfg.dim);
  }
}

double kinetic_energy(const SimConfig& cfg, IntVec n1, IntVec n2) {
  const double scale = 2.0 * std::numbers::pi * std::numbers::pi * cfg.hbar * cfg.hbar /
                       (cfg.box_length * cfg.box_length);
  const double sq1 = double(n1[0]) * n1[0] + double(n1[1]) * n1[1];
  const double sq2 = double(n2[0]) * n2[0] + double(n2[1]) * n2[1];
  return scale * (sq1 / cfg.mass1 + sq2 / cfg.mass2);
}

Eigen::MatrixXd assemble_block(const SimConfig& cfg, const PotentialTable& potential,
                               const BlockBasis& basis) {
  const MomentumGrid grid(cfg.dim, cfg.n_max);
  const auto size = static_cast<Eigen::Index>(basis.size());
  std::vector<IntVec> n1(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) n1[k] = grid.point(basis.first[k]);

  Eigen::MatrixXd h(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    const IntVec& nj = n1[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < size; ++i) {
      const IntVec& ni = n1[static_cast<std::size_t>(i)];
      h(i, j) = potential({nj[0] - ni[0], nj[1] - ni[1]});
    }
  }
  for (Eigen::Index k = 0; k < size; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    h(k, k) += kinetic_energy(cfg, grid.point(basis.first[idx]), grid.point(basis.second[idx]));
  }
  return h;
}

linalg::SymmetricEigen diagonalize_block(const Eigen::MatrixXd& hamiltonian) {
  auto eig = linalg::symmetric_eigen(hamiltonian);
  const Eigen::Index n = hamiltonian.rows();

  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double mag = std::abs(eig.vectors(r, c));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (eig.vectors(pivot, c) < 0.0) eig.vectors.col(c) *= -1.0;
  }

  if (n > 0) {
    const double scale = std::max(std::abs(eig.values(0)), std::abs(eig.values(n - 1)));
    Eigen::MatrixXd residual = linalg::matmul(hamiltonian, eig.vectors);
    residual -= eig.vectors * eig.values.asDiagonal();
    const double worst = residual.colwise().norm().maxCoeff();
    if (worst > kResidualTolerance * std::max(scale, 1e-300)) {
      throw NumericError("block eigenpair residual " + std::to_string(worst) +
                         " exceeds tolerance");
    }
  }
  return eig;
}

std::vector<MomentumBlock> build_blocks(const SimConfig& cfg, int threads) {
  auto bases = enumerate_blocks(cfg);
  const PotentialTable potential(cfg);
  std::vector<MomentumBlock> blocks(bases.size());

  // Largest blocks first so the tail of the schedule is short.
  std::vector<std::size_t> order(bases.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bases[a].size() > bases[b].size();
  });

  parallel_for(order.size(), threads, [&](std::size_t slot) {
    const std::size_t i = order[slot];
    auto eig = diagonalize_block(assemble_block(cfg, potential, bases[i]));
    MomentumBlock& block = blocks[i];
    block.key = bases[i].key;
    block.first = std::move(bases[i].first);
    block.second = std::move(bases[i].second);
    block.energies = std::move(eig.values);
    block.modes = std::move(eig.vectors);
  });
  return blocks;
}

BlockStats block_stats(std::span<const MomentumBlock> blocks) { return stats_of(blocks); }
BlockStats block_stats(std::span<const BlockBasis> blocks) { return stats_of(blocks); }

}  // namespace entspec
