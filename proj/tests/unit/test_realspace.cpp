#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "entspec/errors.hpp"
#include "entspec/kernels.hpp"
#include "entspec/realspace.hpp"
#include "entspec/wavepacket.hpp"

using namespace entspec;
constexpr double pi = std::numbers::pi;

namespace {

SimConfig config(int dim, int n_max) {
  SimConfig cfg;
  cfg.dim = dim;
  cfg.n_max = n_max;
  cfg.packet1 = {{-10.61, 0.0}, {0.25, 0.0}, 5.0 / pi};
  cfg.packet2 = {{10.61, 0.0}, {-0.25, 0.0}, 5.0 / pi};
  return cfg;
}

ModeDensity synthetic(std::vector<double> values, double l = 1.0) {
  ModeDensity d;
  d.resolution = static_cast<int>(values.size());
  d.box_length = l;
  d.values = std::move(values);
  return d;
}

ModeDensity gaussians(const std::vector<std::pair<double, double>>& peaks, int m = 400) {
  std::vector<double> v(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double x = -0.5 + double(i) / m;
    for (auto [c, h] : peaks) v[std::size_t(i)] += h * std::exp(-(x - c) * (x - c) / (2 * 0.02 * 0.02));
  }
  return synthetic(v);
}

}  // namespace

TEST_CASE("plane wave is uniform") {
  for (int dim : {1, 2}) {
    const auto cfg = config(dim, 5);
    const MomentumGrid grid(dim, 5);
    Eigen::VectorXcd mode = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()));
    mode(static_cast<Eigen::Index>(grid.unchecked_index({3, dim == 2 ? -2 : 0}))) = 1.0;
    const auto d = mode_to_position(mode, cfg, 24);
    for (double v : d.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(count_peaks(d) == 0);
  }
}

TEST_CASE("gaussian packet density") {
  const auto cfg = config(1, 151);
  const auto c = packet_coefficients({{10.61, 0.0}, {0.25, 0.0}, 5.0 / pi}, cfg);
  const int m = 4 * 303;
  const auto d = mode_to_position(c, cfg, m);
  CHECK(std::abs(riemann_sum(d) - 1.0) < 1e-6);
  std::size_t best = 0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (d.values[i] > d.values[best]) best = i;
  }
  CHECK(d.coordinate(int(best)) == doctest::Approx(0.25).epsilon(1e-12));
  double mean = 0.0, second = 0.0, mass = 0.0;
  for (int i = 0; i < m; ++i) {
    // Offset from the centre, wrapped onto the ring.
    const double x = std::remainder(d.coordinate(i) - 0.25, 1.0);
    const double w = d.values[std::size_t(i)];
    mass += w;
    mean += w * x;
    second += w * x * x;
  }
  mean /= mass;
  CHECK(std::sqrt(second / mass - mean * mean) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(count_peaks(d) == 1);
}

TEST_CASE("Parseval on random modes") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int dim : {1, 2}) {
    const int n_max = dim == 1 ? 20 : 6;
    const auto cfg = config(dim, n_max);
    const auto n = static_cast<Eigen::Index>(MomentumGrid(dim, n_max).size());
    Eigen::VectorXcd mode(n);
    for (Eigen::Index i = 0; i < n; ++i) mode(i) = {g(rng), g(rng)};
    mode.normalize();
    const auto d = mode_to_position(mode, cfg, 4 * (2 * n_max + 1));
    CHECK(std::abs(riemann_sum(d) - 1.0) < 1e-12);
    auto w = d;
    w.probability = 0.3;
    CHECK(riemann_sum(weighted(w)) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(weighted(weighted(w)).values == weighted(w).values);
  }
}

TEST_CASE("aliasing guard") {
  const auto cfg = config(1, 10);
  const Eigen::VectorXcd mode = Eigen::VectorXcd::Ones(21) / std::sqrt(21.0);
  CHECK_THROWS_AS(mode_to_position(mode, cfg, 41), ConfigError);
  CHECK_NOTHROW(mode_to_position(mode, cfg, 42));
}

TEST_CASE("grid-commensurate translation is a circular shift") {
  const auto cfg = config(1, 40);
  const int m = 200;
  const auto a = mode_to_position(packet_coefficients({{5.0, 0.0}, {0.1, 0.0}, 2.0}, cfg), cfg, m);
  const auto b = mode_to_position(packet_coefficients({{5.0, 0.0}, {0.1 + 7.0 / m, 0.0}, 2.0}, cfg), cfg, m);
  for (int i = 0; i < m; ++i) {
    CHECK(b.values[std::size_t((i + 7) % m)] == doctest::Approx(a.values[std::size_t(i)]).epsilon(1e-10));
  }
}

TEST_CASE("peak counting") {
  CHECK(count_peaks(gaussians({{0.0, 1.0}})) == 1);
  CHECK(count_peaks(gaussians({{-0.2, 1.0}, {0.2, 1.0}})) == 2);
  CHECK(count_peaks(gaussians({{-0.2, 1.0}, {0.2, 0.05}})) == 1);  // below 0.1 of the maximum
  CHECK(count_peaks(gaussians({{-0.3, 1.0}, {0.0, 0.5}, {0.3, 0.2}})) == 3);
  CHECK(count_peaks(gaussians({{-0.5, 1.0}})) == 1);  // peak straddling the periodic seam
  CHECK(count_peaks(synthetic(std::vector<double>(50, 2.0))) == 0);

  ModeDensity d2;
  d2.dim = 2;
  d2.resolution = 40;
  d2.values.assign(1600, 0.0);
  auto put = [&](int i, int j, double h) {
    for (int a = 0; a < 40; ++a) {
      for (int b = 0; b < 40; ++b) {
        const int da = std::min(std::abs(a - i), 40 - std::abs(a - i));
        const int db = std::min(std::abs(b - j), 40 - std::abs(b - j));
        d2.values[std::size_t(a * 40 + b)] += h * std::exp(-(da * da + db * db) / 8.0);
      }
    }
  };
  put(10, 10, 1.0);
  put(30, 25, 0.6);
  put(20, 0, 0.05);
  CHECK(count_peaks(d2) == 2);
}

TEST_CASE("transmitted / reflected split") {
  // Particle 1 starts at +0.25 moving left; the centre is x = 0.
  const auto cfg = config(1, 20);
  CHECK(split_transmitted_reflected(gaussians({{-0.25, 1.0}}), cfg) == ScatterSide::transmitted);
  CHECK(split_transmitted_reflected(gaussians({{0.3, 1.0}}), cfg) == ScatterSide::reflected);
  CHECK(split_transmitted_reflected(gaussians({{-0.25, 1.0}, {0.25, 1.0}}), cfg) == ScatterSide::mixed);
  CHECK(split_transmitted_reflected(synthetic(std::vector<double>(100, 1.0)), cfg) == ScatterSide::mixed);
  const auto [ahead, behind] = side_fractions(synthetic(std::vector<double>(100, 1.0)), cfg);
  CHECK(ahead == doctest::Approx(0.5));
  CHECK(behind == doctest::Approx(0.5));
  CHECK(to_string(ScatterSide::reflected) == "reflected");
}

TEST_CASE("2D transform agrees with the direct sum") {
  const auto cfg = config(2, 3);
  const MomentumGrid grid(2, 3);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Eigen::VectorXcd mode(49);
  for (auto& c : mode) c = {g(rng), g(rng)};
  mode.normalize();
  const int m = 16;
  const auto d = mode_to_position(mode, cfg, m);
  for (int i = 0; i < m; i += 3) {
    for (int j = 0; j < m; j += 5) {
      std::complex<double> psi = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto n = grid.point(k);
        psi += mode(Eigen::Index(k)) *
               std::polar(1.0, 2.0 * pi * (n[0] * d.coordinate(i) + n[1] * d.coordinate(j)));
      }
      CHECK(d.values[std::size_t(i * m + j)] == doctest::Approx(std::norm(psi)).epsilon(1e-12));
    }
  }
}
