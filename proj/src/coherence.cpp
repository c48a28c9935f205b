#include "wigcoh/coherence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace wigcoh {

namespace {

constexpr double kSpectrumSumTolerance = 1e-8;

double clamp_probability(double p) {
  if (p < -kPsdTolerance) throw InvalidState("negative eigenvalue beyond tolerance");
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    const double q = clamp_probability(p);
    if (q > 0.0) s -= q * std::log(q);
  }
  return s;
}

double coherence_l1(const QubitDensity& rho) { return 2.0 * std::abs(rho.rho12()); }

double coherence_rel_entropy(const QubitDensity& rho) {
  if (rho.rho12() == Complex(0.0, 0.0)) return 0.0;
  const std::array<double, 2> diag{rho.rho11(), rho.rho22()};
  const auto eig = rho.eigenvalues();
  return std::max(0.0, shannon_entropy(diag) - shannon_entropy(eig));
}

double skew_information(const QubitDensity& rho) {
  const BlochVector n = bloch_from_density(rho);
  const double transverse = n.n1 * n.n1 + n.n2 * n.n2;
  // 1 - |n|^2 = 4 det(rho); clamped for states a hair outside the ball.
  const double mixedness = std::clamp(4.0 * rho.determinant(), 0.0, 1.0);
  return (1.0 - std::sqrt(mixedness)) * transverse;
}

double coherence_frobenius(std::span<const double> eigenvalues) {
  const auto d = eigenvalues.size();
  if (d < 2) throw InvalidState("Frobenius coherence needs dimension >= 2");
  double sum = 0.0;
  for (double l : eigenvalues) sum += l;
  if (std::abs(sum - 1.0) > kSpectrumSumTolerance) {
    throw InvalidState("eigenvalues must sum to 1");
  }
  const double inv_d = 1.0 / static_cast<double>(d);
  double acc = 0.0;
  for (double l : eigenvalues) {
    const double dev = clamp_probability(l) - inv_d;
    acc += dev * dev;
  }
  return std::sqrt(static_cast<double>(d) / static_cast<double>(d - 1) * acc);
}

double coherence_frobenius(const QubitDensity& rho) {
  const auto eig = rho.eigenvalues();
  return coherence_frobenius(std::span<const double>(eig));
}

double frobenius_deficit(double nz_deficit) {
  if (!(nz_deficit >= 0.0) || nz_deficit > 2.0) {
    throw InvalidState("n_z deficit must lie in [0, 2]");
  }
  // C_F = |n_z| = |1 - delta|.
  return nz_deficit <= 1.0 ? nz_deficit : 2.0 - nz_deficit;
}

}  // namespace wigcoh
