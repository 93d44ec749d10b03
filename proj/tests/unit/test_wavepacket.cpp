#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "entspec/errors.hpp"
#include "entspec/evolution.hpp"
#include "entspec/wavepacket.hpp"

using namespace entspec;
constexpr double pi = std::numbers::pi;

namespace {

SimConfig config(int n_max, double a = 0.0) {
  SimConfig cfg;
  cfg.n_max = n_max;
  cfg.packet1 = {{-10.61, 0.0}, {0.25, 0.0}, 5.0 / pi};
  cfg.packet2 = {{10.61, 0.0}, {-0.25, 0.0}, 5.0 / pi};
  cfg.potential = {PotentialKind::delta, a, 0.0};
  return cfg;
}

}  // namespace

TEST_CASE("real packet at the origin") {
  const auto cfg = config(30);
  const PacketSpec p{{4.0, 0.0}, {0.0, 0.0}, 2.0};
  const auto c = packet_coefficients(p, cfg);
  const MomentumGrid grid(1, 30);
  Eigen::Index best = 0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    CHECK(c(i).imag() == 0.0);
    CHECK(c(i).real() > 0.0);
    if (c(i).real() > c(best).real()) best = i;
  }
  CHECK(grid.point(static_cast<std::size_t>(best))[0] == 4);
  CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("momentum spread equals sigma") {
  const auto cfg = config(151);
  const PacketSpec p{{10.61, 0.0}, {0.25, 0.0}, 5.0 / pi};
  const auto c = packet_coefficients(p, cfg);
  const MomentumGrid grid(1, 151);
  double mean = 0.0, second = 0.0, norm = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double w = std::norm(c(i));
    const double n = grid.point(static_cast<std::size_t>(i))[0];
    norm += w;
    mean += w * n;
    second += w * n * n;
  }
  CHECK(std::abs(norm - 1.0) < 1e-12);
  CHECK(std::abs(mean - 10.61) < 1e-9);
  CHECK(std::abs(std::sqrt(second - mean * mean) - 5.0 / pi) < 1e-6);
}

TEST_CASE("translation covariance") {
  const auto cfg = config(40);
  const PacketSpec a{{-3.3, 0.0}, {0.1, 0.0}, 2.0};
  PacketSpec b = a;
  const double delta = 0.137;
  b.position[0] += delta;
  const auto ca = packet_coefficients(a, cfg);
  const auto cb = packet_coefficients(b, cfg);
  const MomentumGrid grid(1, 40);
  const int reference = -3;  // grid point nearest N_c carries the phase reference
  for (Eigen::Index i = 0; i < ca.size(); ++i) {
    const int n = grid.point(static_cast<std::size_t>(i))[0];
    CHECK(std::abs(cb(i)) == doctest::Approx(std::abs(ca(i))).epsilon(1e-14));
    const auto expected = ca(i) * std::polar(1.0, -2.0 * pi * (n - reference) * delta);
    CHECK(std::abs(cb(i) - expected) < 1e-14);
  }
}

TEST_CASE("tail mass precondition") {
  const auto cfg = config(14);
  CHECK_THROWS_AS(packet_coefficients({{10.61, 0.0}, {0.0, 0.0}, 5.0 / pi}, cfg), ConfigError);
}

TEST_CASE("product state") {
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(5), e3 = Eigen::VectorXcd::Zero(5);
  e1(1) = 1.0;
  e3(3) = 1.0;
  const auto psi = product_state(e1, e3);
  CHECK(psi.amplitudes(1, 3) == std::complex<double>(1.0));
  CHECK(psi.amplitudes.cwiseAbs().sum() == 1.0);

  const auto cfg = config(40);
  const auto c1 = packet_coefficients(cfg.packet1, cfg);
  const auto c2 = packet_coefficients(cfg.packet2, cfg);
  const auto m = product_state(c1, c2).amplitudes;
  CHECK(m.norm() == doctest::Approx(1.0).epsilon(1e-14));
  double worst = 0.0;
  for (Eigen::Index i = 0; i + 1 < m.rows(); i += 3) {
    for (Eigen::Index j = 0; j + 1 < m.cols(); j += 3) {
      worst = std::max(worst, std::abs(m(i, j) * m(i + 1, j + 1) - m(i, j + 1) * m(i + 1, j)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("projection round trip and Parseval") {
  for (double a : {0.0, 120.0}) {
    auto cfg = config(40, a);
    const auto blocks = build_blocks(cfg, 2);
    const auto psi = product_state(packet_coefficients(cfg.packet1, cfg),
                                   packet_coefficients(cfg.packet2, cfg));
    const auto state = project_to_blocks(psi, blocks, 2);
    double mass = 0.0;
    for (const auto& v : state) mass += v.squaredNorm();
    CHECK(std::abs(mass - 1.0) < 1e-12);
    const auto back = assemble_matrix(state, blocks, 81, 0.0);
    CHECK((back.amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() < 1e-12);

    if (a == 0.0) {
      // Diagonal blocks: U is a permutation (ascending energies), so the
      // coefficients are Ψ's entries rearranged.
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& u = blocks[b].modes;
        for (Eigen::Index col = 0; col < u.cols(); ++col) {
          Eigen::Index row = 0;
          CHECK(u.col(col).cwiseAbs().maxCoeff(&row) == 1.0);
          CHECK(u.col(col).cwiseAbs().sum() == 1.0);
          const auto k = static_cast<std::size_t>(row);
          CHECK(state[b](col) == psi.amplitudes(blocks[b].first[k], blocks[b].second[k]));
        }
      }
    }
  }
}
