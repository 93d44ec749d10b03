#include "entspec/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <tuple>

#include "entspec/errors.hpp"
#include "entspec/linalg.hpp"

namespace entspec {

namespace {

constexpr double kAmbiguousOverlap = 0.5;
constexpr double kDensityTolerance = 1e-10;
// Below this probability a mode lies in the numerically null subspace and has
// no identity to track.
constexpr double kTrackFloor = 1e-20;

EntanglementSnapshot finish(double time, std::vector<double> spectrum, Eigen::MatrixXcd modes) {
  EntanglementSnapshot snap;
  snap.time = time;
  fix_column_phases(modes);
  snap.modes = std::move(modes);
  snap.probabilities.assign(spectrum.begin(),
                            spectrum.begin() + static_cast<std::ptrdiff_t>(snap.modes.cols()));
  snap.residual = 1.0 - std::accumulate(snap.probabilities.begin(), snap.probabilities.end(), 0.0);
  snap.spectrum = std::move(spectrum);
  return snap;
}

}  // namespace

void fix_column_phases(Eigen::MatrixXcd& columns) {
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < columns.rows(); ++r) {
      const double mag = std::abs(columns(r, c));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best > 0.0) columns.col(c) *= std::conj(columns(pivot, c)) / best;
  }
}

EntanglementSnapshot schmidt_spectrum(const CoefficientMatrix& psi, int k) {
  auto svd = linalg::complex_svd(psi.amplitudes);
  const auto count = std::min<Eigen::Index>(k, svd.singular_values.size());
  std::vector<double> spectrum(static_cast<std::size_t>(svd.singular_values.size()));
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double s = svd.singular_values(static_cast<Eigen::Index>(i));
    spectrum[i] = s * s;
  }
  return finish(psi.time, std::move(spectrum), svd.left.leftCols(count));
}

EntanglementSnapshot reduced_density_oracle(const CoefficientMatrix& psi, int k) {
  const Eigen::MatrixXcd rho = psi.amplitudes * psi.amplitudes.adjoint();
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kDensityTolerance) {
    throw NumericError("reduced density matrix is not Hermitian (" + std::to_string(asym) + ")");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  if (solver.info() != Eigen::Success) throw NumericError("reduced density eigensolver failed");

  const Eigen::Index n = rho.rows();
  if (n > 0 && solver.eigenvalues()(0) < -kDensityTolerance) {
    throw NumericError("reduced density matrix has a negative eigenvalue");
  }
  const auto count = std::min<Eigen::Index>(k, n);
  std::vector<double> spectrum(static_cast<std::size_t>(n));
  Eigen::MatrixXcd modes(n, count);
  for (Eigen::Index i = 0; i < n; ++i) {
    spectrum[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
    if (i < count) modes.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return finish(psi.time, std::move(spectrum), std::move(modes));
}

std::vector<ModeTrack> track_modes(std::span<const EntanglementSnapshot> snapshots) {
  if (snapshots.size() < 2) throw NumericError("track_modes needs at least two snapshots");
  const Eigen::Index k = snapshots.front().modes.cols();
  for (const auto& s : snapshots) {
    if (s.modes.cols() != k) throw NumericError("track_modes: snapshots differ in K");
  }

  std::vector<ModeTrack> tracks;
  tracks.reserve(snapshots.size() - 1);
  for (std::size_t j = 0; j + 1 < snapshots.size(); ++j) {
    const Eigen::MatrixXd overlap =
        (snapshots[j].modes.adjoint() * snapshots[j + 1].modes).cwiseAbs();

    const auto& pa = snapshots[j].probabilities;
    const auto& pb = snapshots[j + 1].probabilities;
    std::vector<std::tuple<double, int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(k * k));
    for (int a = 0; a < k; ++a) {
      if (pa[static_cast<std::size_t>(a)] < kTrackFloor) continue;
      for (int b = 0; b < k; ++b) {
        if (pb[static_cast<std::size_t>(b)] >= kTrackFloor) pairs.emplace_back(overlap(a, b), a, b);
      }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });

    ModeTrack track;
    track.permutation.assign(static_cast<std::size_t>(k), -1);
    track.overlaps.assign(static_cast<std::size_t>(k), 0.0);
    std::vector<bool> taken(static_cast<std::size_t>(k), false);
    for (const auto& [value, a, b] : pairs) {
      const auto ua = static_cast<std::size_t>(a);
      const auto ub = static_cast<std::size_t>(b);
      if (track.permutation[ua] >= 0 || taken[ub]) continue;
      track.permutation[ua] = b;
      track.overlaps[ua] = value;
      taken[ub] = true;
      if (value < kAmbiguousOverlap) track.ambiguous = true;
    }
    // Whatever is left (null-subspace modes) pairs up in rank order.
    int next = 0;
    for (int a = 0; a < k; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      if (track.permutation[ua] >= 0) continue;
      while (taken[static_cast<std::size_t>(next)]) ++next;
      track.permutation[ua] = next;
      track.overlaps[ua] = overlap(a, next);
      taken[static_cast<std::size_t>(next)] = true;
    }
    tracks.push_back(std::move(track));
  }
  return tracks;
}

std::vector<std::size_t> rank_swaps(std::span<const ModeTrack> tracks, int a, int b) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < tracks.size(); ++j) {
    const auto& perm = tracks[j].permutation;
    if (static_cast<std::size_t>(std::max(a, b)) >= perm.size()) break;
    if (perm[static_cast<std::size_t>(a)] == b && perm[static_cast<std::size_t>(b)] == a) {
      out.push_back(j);
    }
  }
  return out;
}

PurityEntropy purity_entropy(std::span<const double> probabilities, double residual) {
  PurityEntropy out;
  out.residual = residual;
  for (double p : probabilities) {
    out.purity += p * p;
    if (p > 0.0) out.entropy -= p * std::log(p);
  }
  return out;
}

}  // namespace entspec
