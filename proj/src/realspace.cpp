#include "entspec/realspace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "entspec/errors.hpp"
#include "entspec/kernels.hpp"

namespace entspec {

namespace {

using cd = std::complex<double>;

constexpr double kSideFraction = 0.9;
// Differences below this fraction of the maximum are rounding, not structure.
constexpr double kFlatTolerance = 1e-12;

// F[m][k] = exp(2πi n_k x_m / L) with x_m = -L/2 + mL/M, row-major M × side.
// The phase is reduced exactly as -πn + 2π (n m mod M)/M.
std::vector<cd> plane_waves(int n_max, int resolution) {
  const int side = 2 * n_max + 1;
  std::vector<cd> f(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(side));
  for (int m = 0; m < resolution; ++m) {
    for (int k = 0; k < side; ++k) {
      const long long n = k - n_max;
      long long r = (n * m) % resolution;
      if (r < 0) r += resolution;
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / resolution;
      f[static_cast<std::size_t>(m) * static_cast<std::size_t>(side) + static_cast<std::size_t>(k)] =
          sign * cd(std::cos(angle), std::sin(angle));
    }
  }
  return f;
}

const double* as_doubles(const cd* p) { return reinterpret_cast<const double*>(p); }
double* as_doubles(cd* p) { return reinterpret_cast<double*>(p); }

double wrap(double u, double length) {
  u = std::fmod(u + 0.5 * length, length);
  if (u < 0.0) u += length;
  return u - 0.5 * length;
}

}  // namespace

double ModeDensity::cell_volume() const {
  const double h = box_length / resolution;
  return dim == 1 ? h : h * h;
}

ModeDensity mode_to_position(const Eigen::VectorXcd& mode, const SimConfig& cfg, int resolution) {
  const int side = 2 * cfg.n_max + 1;
  if (resolution < 2 * side) {
    throw ConfigError("mode grid resolution " + std::to_string(resolution) +
                      " aliases; need at least " + std::to_string(2 * side));
  }
  const std::size_t s = static_cast<std::size_t>(side);
  const std::size_t m = static_cast<std::size_t>(resolution);
  const std::size_t expected = cfg.dim == 1 ? s : s * s;
  if (static_cast<std::size_t>(mode.size()) != expected) {
    throw ConfigError("mode length does not match the momentum grid");
  }

  const auto& k = simd::kernels();
  const auto f = plane_waves(cfg.n_max, resolution);
  const double norm = std::pow(cfg.box_length, -0.5 * cfg.dim);

  ModeDensity out;
  out.dim = cfg.dim;
  out.resolution = resolution;
  out.box_length = cfg.box_length;

  if (cfg.dim == 1) {
    std::vector<cd> psi(m);
    k.complex_gemv(m, s, as_doubles(f.data()), s, as_doubles(mode.data()), as_doubles(psi.data()));
    out.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.values[i] = std::norm(psi[i] * norm);
    return out;
  }

  // Separable: first over n2 for each n1 row, then over n1 for each y.
  std::vector<cd> partial(s * m);  // [n1][y]
  for (std::size_t a = 0; a < s; ++a) {
    k.complex_gemv(m, s, as_doubles(f.data()), s, as_doubles(mode.data() + a * s),
                   as_doubles(partial.data() + a * m));
  }
  std::vector<cd> column(s);
  std::vector<cd> psi(m);
  out.values.resize(m * m);
  for (std::size_t y = 0; y < m; ++y) {
    for (std::size_t a = 0; a < s; ++a) column[a] = partial[a * m + y];
    k.complex_gemv(m, s, as_doubles(f.data()), s, as_doubles(column.data()),
                   as_doubles(psi.data()));
    for (std::size_t x = 0; x < m; ++x) out.values[x * m + y] = std::norm(psi[x] * norm);
  }
  return out;
}

ModeDensity weighted(const ModeDensity& density) {
  ModeDensity out = density;
  if (!out.weighted) {
    for (double& v : out.values) v *= out.probability;
    out.weighted = true;
  }
  return out;
}

double riemann_sum(const ModeDensity& density) {
  double sum = 0.0;
  for (double v : density.values) sum += v;
  return sum * density.cell_volume();
}

int count_peaks(const ModeDensity& density, double threshold_frac) {
  const auto& v = density.values;
  if (v.empty()) return 0;
  const double top = *std::max_element(v.begin(), v.end());
  const double floor = threshold_frac * top;
  const double eps = kFlatTolerance * top;
  const int m = density.resolution;
  auto at = [&](int i, int j) {
    i = (i + m) % m;
    j = (j + m) % m;
    return density.dim == 1 ? v[static_cast<std::size_t>(i)]
                            : v[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
                                static_cast<std::size_t>(j)];
  };

  int peaks = 0;
  const int rows = m;
  const int cols = density.dim == 1 ? 1 : m;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double c = at(i, j);
      if (c < floor || c <= 0.0) continue;
      bool is_max = true;
      if (density.dim == 1) {
        is_max = c > at(i - 1, 0) + eps && c > at(i + 1, 0) + eps;
      } else {
        for (int di = -1; di <= 1 && is_max; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            if ((di != 0 || dj != 0) && !(c > at(i + di, j + dj) + eps)) {
              is_max = false;
              break;
            }
          }
        }
      }
      if (is_max) ++peaks;
    }
  }
  return peaks;
}

std::string_view to_string(ScatterSide side) {
  switch (side) {
    case ScatterSide::transmitted: return "transmitted";
    case ScatterSide::reflected: return "reflected";
    case ScatterSide::mixed: return "mixed";
  }
  return "mixed";
}

std::pair<double, double> side_fractions(const ModeDensity& density, const SimConfig& cfg) {
  const double centre = 0.5 * (cfg.packet1.position[0] + cfg.packet2.position[0]);
  const double direction = cfg.packet1.central_momentum[0] >= 0.0 ? 1.0 : -1.0;
  const double length = density.box_length;
  const int m = density.resolution;
  const int cols = density.dim == 1 ? 1 : m;

  double ahead = 0.0;
  double behind = 0.0;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double u = direction * wrap(density.coordinate(i) - centre, length);
    double mass = 0.0;
    for (int j = 0; j < cols; ++j) {
      mass += density.values[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                             static_cast<std::size_t>(j)];
    }
    total += mass;
    // Points on the centre or the antipode are split evenly.
    if (std::abs(u) < 1e-12 * length || std::abs(std::abs(u) - 0.5 * length) < 1e-12 * length) {
      ahead += 0.5 * mass;
      behind += 0.5 * mass;
    } else if (u > 0.0) {
      ahead += mass;
    } else {
      behind += mass;
    }
  }
  if (total <= 0.0) return {0.0, 0.0};
  return {ahead / total, behind / total};
}

ScatterSide split_transmitted_reflected(const ModeDensity& density, const SimConfig& cfg) {
  const auto [ahead, behind] = side_fractions(density, cfg);
  if (ahead >= kSideFraction) return ScatterSide::transmitted;
  if (behind >= kSideFraction) return ScatterSide::reflected;
  return ScatterSide::mixed;
}

}  // namespace entspec
