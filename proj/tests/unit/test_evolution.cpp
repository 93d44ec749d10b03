#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "entspec/errors.hpp"
#include "entspec/evolution.hpp"

using namespace entspec;
constexpr double pi = std::numbers::pi;

namespace {

struct Setup {
  SimConfig cfg;
  std::vector<MomentumBlock> blocks;
  CoefficientMatrix psi0;
  BlockState state;
  std::size_t grid = 0;
};

Setup make(double a, RealVec momenta = {-10.61, 10.61}) {
  Setup s;
  s.cfg.n_max = 40;
  s.cfg.packet1 = {{momenta[0], 0.0}, {0.25, 0.0}, 5.0 / pi};
  s.cfg.packet2 = {{momenta[1], 0.0}, {-0.25, 0.0}, 5.0 / pi};
  s.cfg.potential = {PotentialKind::delta, a, 0.0};
  s.blocks = build_blocks(s.cfg, 2);
  s.psi0 = product_state(packet_coefficients(s.cfg.packet1, s.cfg),
                         packet_coefficients(s.cfg.packet2, s.cfg));
  s.state = project_to_blocks(s.psi0, s.blocks);
  s.grid = 81;
  return s;
}

double norm2(const BlockState& st) {
  double m = 0.0;
  for (const auto& v : st) m += v.squaredNorm();
  return m;
}

}  // namespace

TEST_CASE("phase evolution") {
  const auto s = make(120.0);
  const auto same = evolve_to(s.state, s.blocks, 0.0, 1.0);
  for (std::size_t b = 0; b < same.size(); ++b) CHECK(same[b] == s.state[b]);

  const double t1 = 1.3e-3, t2 = 4.1e-3;
  CHECK(std::abs(norm2(evolve_to(s.state, s.blocks, t2, 1.0)) - norm2(s.state)) < 1e-14);

  // Group property: evolve to t1, then by t2 - t1, equals evolving to t2.
  const auto direct = evolve_to(s.state, s.blocks, t2, 1.0);
  const auto staged = evolve_to(evolve_to(s.state, s.blocks, t1, 1.0), s.blocks, t2 - t1, 1.0);
  double worst = 0.0;
  for (std::size_t b = 0; b < direct.size(); ++b) {
    worst = std::max(worst, (direct[b] - staged[b]).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("assembly round trip and norm") {
  const auto s = make(120.0);
  const auto psi = assemble_matrix(evolve_to(s.state, s.blocks, 0.0, 1.0), s.blocks, s.grid, 0.0);
  CHECK((psi.amplitudes - s.psi0.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
  for (double t : {1e-3, 3.75e-3, 7.5e-3}) {
    const auto p = assemble_matrix(evolve_to(s.state, s.blocks, t, 1.0), s.blocks, s.grid, t);
    CHECK(p.time == t);
    CHECK(std::abs(p.amplitudes.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("free evolution stays a product state") {
  const auto s = make(0.0);
  for (double t : {2e-3, 7.5e-3}) {
    const auto p = assemble_matrix(evolve_to(s.state, s.blocks, t, 1.0), s.blocks, s.grid, t);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p.amplitudes);
    CHECK(svd.singularValues()(1) < 1e-12);
  }
}

TEST_CASE("conserved quantities") {
  const auto s = make(120.0);
  std::vector<ConservedSample> samples;
  for (double t : {0.0, 2e-3, 3.75e-3, 7.5e-3}) {
    const auto evolved = evolve_to(s.state, s.blocks, t, 1.0);
    const auto psi = assemble_matrix(evolved, s.blocks, s.grid, t);
    samples.push_back(measure_conserved(psi, evolved, s.blocks, s.cfg));
    CHECK(std::abs(samples.back().total_momentum[0]) < 1e-10);  // head-on, symmetric
  }
  const auto report = conserved_report(samples, s.cfg);
  CHECK(report.ok());
  CHECK(report.norm_drift <= 1e-10);
  CHECK(report.energy_drift <= 1e-9);
  CHECK(report.momentum_drift <= 1e-9);

  // Energy from block coefficients equals the direct kinetic + potential sum at t = 0.
  double kinetic = 0.0;
  const MomentumGrid grid(1, 40);
  for (Eigen::Index i = 0; i < s.psi0.amplitudes.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.psi0.amplitudes.cols(); ++j) {
      kinetic += kinetic_energy(s.cfg, grid.point(std::size_t(i)), grid.point(std::size_t(j))) *
                 std::norm(s.psi0.amplitudes(i, j));
    }
  }
  // V̂ = A/L couples all states in a block: ⟨V⟩ = A Σ_N |Σ_{n1} Ψ(n1, N - n1)|².
  double potential = 0.0;
  for (const auto& b : s.blocks) {
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) sum += s.psi0.amplitudes(b.first[k], b.second[k]);
    potential += 120.0 * std::norm(sum);
  }
  CHECK(samples.front().energy_blocks == doctest::Approx(kinetic + potential).epsilon(1e-11));

  const auto moving = make(50.0, {-10.61, 5.0});
  std::vector<ConservedSample> ms;
  for (double t : {0.0, 4e-3}) {
    const auto evolved = evolve_to(moving.state, moving.blocks, t, 1.0);
    ms.push_back(measure_conserved(assemble_matrix(evolved, moving.blocks, moving.grid, t), evolved,
                                   moving.blocks, moving.cfg));
  }
  CHECK(ms[0].total_momentum[0] == doctest::Approx(2.0 * pi * (5.0 - 10.61)).epsilon(1e-9));
  CHECK(conserved_report(ms, moving.cfg).ok());

  CHECK_THROWS_AS(conserved_report(std::span<const ConservedSample>(samples.data(), 1), s.cfg),
                  NumericError);
}

TEST_CASE("drift flags") {
  SimConfig cfg;
  std::vector<ConservedSample> samples(2);
  samples[0].norm = 1.0;
  samples[0].energy_blocks = samples[0].energy_state = 100.0;
  samples[1] = samples[0];
  samples[1].time = 1.0;
  samples[1].norm = 1.0 + 1e-8;
  samples[1].energy_blocks = samples[1].energy_state = 100.0 * (1.0 + 1e-6);
  const auto r = conserved_report(samples, cfg);
  CHECK_FALSE(r.ok());
  CHECK(r.flags.size() == 2);
}
