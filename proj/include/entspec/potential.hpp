#pragma once

#include <array>

namespace entspec {

using IntVec = std::array<int, 2>;
using RealVec = std::array<double, 2>;

enum class PotentialKind { delta, gaussian };

/// Interaction potential V(|x1 - x2|).
///
/// delta:    V(x) = A δ(x)
/// gaussian: V(r) = A / (sqrt(2π) w) · exp(-r² / 2w²), in 1D and 2D alike.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::delta;
  double strength = 0.0;
  double width = 0.0;
};

struct ScatteringOracle {
  double reduced_mass = 0.0;
  double momentum = 0.0;
  double transmission = 1.0;
  double reflection = 0.0;
};

double reduced_mass(double m1, double m2);

/// Periodic-box Fourier coefficient (1/L^d) ∫ V(|x|) exp(2πi Δn·x/L) d^dx,
/// using the infinite-line transform (image error O(exp(-L²/8w²))).
double fourier_coefficient(const PotentialSpec& spec, IntVec dn, double box_length, int dim);

/// Analytic delta-barrier transmission T = 1 / (1 + (μA/ħp)²).
ScatteringOracle delta_transmission(double strength, double mu, double p, double hbar);

/// Inverse of delta_transmission: A = (ħp/μ) sqrt(1/T - 1).
double solve_strength_for_T(double transmission, double mu, double p, double hbar);

/// Bare contact strength for a basis truncated to |n| <= n_max that scatters
/// like the continuum strength `strength` at relative momentum p.
///
/// The truncated basis drops the high-momentum part of the free resolvent,
/// which makes a bare coupling act stronger. Restoring it gives
///   1/A_bare = 1/A + (μL/π²ħ²) Σ_{n>n_max} 1/(n² - n0²),   n0 = pL/(2πħ).
/// 1D only; requires n_max > n0.
double lattice_contact_strength(double strength, double mu, double p, double hbar, double box_length,
                                int n_max);

/// Transmission through the 1D Gaussian barrier, from direct integration of the
/// relative-coordinate Schrödinger equation at energy p²/2μ.
double gaussian_transmission(double strength, double width, double mu, double p, double hbar);

/// Bisection on A for gaussian_transmission(A) = T. Requires 0 < T < 1.
double solve_gaussian_strength_for_T(double transmission, double width, double mu, double p,
                                     double hbar);

}  // namespace entspec
