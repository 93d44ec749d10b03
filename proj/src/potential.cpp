#include "entspec/potential.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "entspec/errors.hpp"

namespace entspec {

namespace {

constexpr double kPi = std::numbers::pi;

// Tail sum Σ_{n > n_max} 1 / (n² - a²) for 0 <= a < n_max + 1.
double resolvent_tail(int n_max, double a) {
  const double start = static_cast<double>(n_max) + 1.0;
  if (a < 1e-6) return boost::math::trigamma(start);
  return (boost::math::digamma(start + a) - boost::math::digamma(start - a)) / (2.0 * a);
}

}  // namespace

double reduced_mass(double m1, double m2) { return m1 * m2 / (m1 + m2); }

double fourier_coefficient(const PotentialSpec& spec, IntVec dn, double box_length, int dim) {
  const double volume = dim == 1 ? box_length : box_length * box_length;
  if (spec.kind == PotentialKind::delta) return spec.strength / volume;

  const double w = spec.width;
  const double n2 = dim == 1 ? double(dn[0]) * dn[0] : double(dn[0]) * dn[0] + double(dn[1]) * dn[1];
  const double envelope = std::exp(-2.0 * kPi * kPi * w * w * n2 / (box_length * box_length));
  const double prefactor = dim == 1 ? spec.strength : spec.strength * std::sqrt(2.0 * kPi) * w;
  return prefactor / volume * envelope;
}

ScatteringOracle delta_transmission(double strength, double mu, double p, double hbar) {
  if (p == 0.0) throw NumericError("delta_transmission: momentum must be nonzero");
  const double beta = mu * strength / (hbar * p);
  ScatteringOracle out;
  out.reduced_mass = mu;
  out.momentum = p;
  out.transmission = 1.0 / (1.0 + beta * beta);
  out.reflection = beta * beta / (1.0 + beta * beta);
  return out;
}

double solve_strength_for_T(double transmission, double mu, double p, double hbar) {
  if (!(transmission > 0.0 && transmission < 1.0)) {
    throw ConfigError("solve_strength_for_T: target transmission must lie in (0, 1)");
  }
  if (p == 0.0) throw NumericError("solve_strength_for_T: momentum must be nonzero");
  return hbar * std::abs(p) / mu * std::sqrt(1.0 / transmission - 1.0);
}

double lattice_contact_strength(double strength, double mu, double p, double hbar, double box_length,
                                int n_max) {
  if (strength == 0.0) return 0.0;
  const double n0 = std::abs(p) * box_length / (2.0 * kPi * hbar);
  if (!(n0 + 1.0 < n_max)) {
    throw ConfigError("lattice_contact_strength: relative momentum too close to the cutoff");
  }
  const double counterterm =
      mu * box_length / (kPi * kPi * hbar * hbar) * resolvent_tail(n_max, n0);
  return 1.0 / (1.0 / strength + counterterm);
}

double gaussian_transmission(double strength, double width, double mu, double p, double hbar) {
  if (!(width > 0.0)) throw ConfigError("gaussian_transmission: width must be positive");
  if (p == 0.0) throw NumericError("gaussian_transmission: momentum must be nonzero");

  using C = std::complex<double>;
  const double k = std::abs(p) / hbar;
  const double energy = p * p / (2.0 * mu);
  const double amp = strength / (std::sqrt(2.0 * kPi) * width);
  const double scale = 2.0 * mu / (hbar * hbar);
  auto coupling = [&](double x) {
    return scale * (amp * std::exp(-x * x / (2.0 * width * width)) - energy);
  };

  // Outgoing wave exp(ikx) beyond the barrier, integrated back with RK4 on
  // (ψ, ψ'). Resolve both the wavelength and the barrier width.
  const double reach = 12.0 * width;
  const double kappa = std::sqrt(std::abs(scale * amp) + k * k);
  const double h_target = std::min(width, 1.0 / kappa) / 200.0;
  const int steps = std::max(2000, static_cast<int>(std::ceil(2.0 * reach / h_target)));
  const double h = -2.0 * reach / steps;

  double x = reach;
  C psi = std::exp(C(0.0, k * x));
  C dpsi = C(0.0, k) * psi;
  for (int i = 0; i < steps; ++i) {
    const double xm = x + 0.5 * h;
    const double xe = x + h;
    const C k1p = dpsi, k1d = coupling(x) * psi;
    const C k2p = dpsi + 0.5 * h * k1d, k2d = coupling(xm) * (psi + 0.5 * h * k1p);
    const C k3p = dpsi + 0.5 * h * k2d, k3d = coupling(xm) * (psi + 0.5 * h * k2p);
    const C k4p = dpsi + h * k3d, k4d = coupling(xe) * (psi + h * k3p);
    psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    x = reach + (i + 1) * h;
  }
  const C incoming = 0.5 * (psi + dpsi / C(0.0, k)) * std::exp(C(0.0, -k * x));
  return 1.0 / std::norm(incoming);
}

double solve_gaussian_strength_for_T(double transmission, double width, double mu, double p,
                                     double hbar) {
  if (!(transmission > 0.0 && transmission < 1.0)) {
    throw ConfigError("solve_gaussian_strength_for_T: target transmission must lie in (0, 1)");
  }
  double lo = 0.0;
  double hi = solve_strength_for_T(transmission, mu, p, hbar);
  int guard = 0;
  while (gaussian_transmission(hi, width, mu, p, hbar) > transmission) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60) throw NumericError("solve_gaussian_strength_for_T: no bracket found");
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (gaussian_transmission(mid, width, mu, p, hbar) > transmission ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace entspec
