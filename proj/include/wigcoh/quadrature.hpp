#pragma once

// Gaussian quadrature node tables and a vector-valued adaptive Simpson rule.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace wigcoh {

enum class QuadratureScheme { GaussHermite, AdaptiveSimpson };

struct QuadratureConfig {
  QuadratureScheme scheme = QuadratureScheme::GaussHermite;
  // Base Gauss order; 0 selects the per-geometry default (64 in 1D, 48x48 in 3D).
  int order = 0;
  // Gauss orders are doubled until successive estimates agree; this caps the doubling.
  int max_order = 512;
  // Recursion limit of the adaptive Simpson rule.
  int max_depth = 48;
  double rel_tol = 1e-10;
  // Half-width of the truncated Simpson domain, in units of sigma.
  double window = 10.0;

  // Throws InvalidState on out-of-range fields.
  void validate() const;
  int order_1d() const { return order > 0 ? order : 64; }
  int order_3d() const { return order > 0 ? order : 48; }
};

struct NodeTable {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Weight exp(-x^2) on the real line; weights sum to sqrt(pi).
// Tables are built once per order and shared read-only.
const NodeTable& gauss_hermite(int n);
// Weight exp(-x) on [0, inf); weights sum to 1.
const NodeTable& gauss_laguerre(int n);

template <std::size_t K>
struct SimpsonResult {
  std::array<double, K> value{};
  std::array<double, K> error{};
  bool converged = true;
};

namespace detail {

template <std::size_t K>
using Vals = std::array<double, K>;

template <std::size_t K, class F>
void simpson_step(F& f, double a, double b, const Vals<K>& fa, const Vals<K>& fm,
                  const Vals<K>& fb, const Vals<K>& whole, const Vals<K>& tol, int depth,
                  SimpsonResult<K>& out) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Vals<K> flm = f(lm);
  const Vals<K> frm = f(rm);
  const double h = (b - a) / 12.0;
  Vals<K> left{}, right{}, diff{};
  bool ok = true;
  for (std::size_t k = 0; k < K; ++k) {
    left[k] = h * (fa[k] + 4.0 * flm[k] + fm[k]);
    right[k] = h * (fm[k] + 4.0 * frm[k] + fb[k]);
    diff[k] = left[k] + right[k] - whole[k];
    if (!(std::abs(diff[k]) <= 15.0 * tol[k])) ok = false;
  }
  if (ok || depth <= 0) {
    if (!ok) out.converged = false;
    for (std::size_t k = 0; k < K; ++k) {
      out.value[k] += left[k] + right[k] + diff[k] / 15.0;
      out.error[k] += std::abs(diff[k]) / 15.0;
    }
    return;
  }
  Vals<K> half_tol{};
  for (std::size_t k = 0; k < K; ++k) half_tol[k] = 0.5 * tol[k];
  simpson_step<K>(f, a, m, fa, flm, fm, left, half_tol, depth - 1, out);
  simpson_step<K>(f, m, b, fm, frm, fb, right, half_tol, depth - 1, out);
}

}  // namespace detail

// Integrates a vector-valued f over [a, b] to absolute tolerance tol[k] per
// component. The interval is pre-split into `panels` equal pieces, each
// refined adaptively with Richardson-corrected Simpson estimates.
template <std::size_t K, class F>
SimpsonResult<K> adaptive_simpson(F&& f, double a, double b, const std::array<double, K>& tol,
                                  int max_depth, int panels = 8) {
  SimpsonResult<K> out;
  const double width = (b - a) / panels;
  std::array<double, K> panel_tol{};
  for (std::size_t k = 0; k < K; ++k) panel_tol[k] = tol[k] / panels;
  auto fa = f(a);
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == panels) ? b : lo + width;
    const auto fm = f(0.5 * (lo + hi));
    const auto fb = f(hi);
    std::array<double, K> whole{};
    for (std::size_t k = 0; k < K; ++k) {
      whole[k] = (hi - lo) / 6.0 * (fa[k] + 4.0 * fm[k] + fb[k]);
    }
    detail::simpson_step<K>(f, lo, hi, fa, fm, fb, whole, panel_tol, max_depth, out);
    fa = fb;
  }
  return out;
}

// Fixed composite Simpson rule with `panels` panels; used for magnitude
// estimates that scale adaptive tolerances.
template <std::size_t K, class F>
std::array<double, K> composite_simpson(F&& f, double a, double b, int panels) {
  std::array<double, K> sum{};
  const double h = (b - a) / panels;
  for (int i = 0; i <= 2 * panels; ++i) {
    const double coef = (i == 0 || i == 2 * panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const auto v = f(a + 0.5 * h * i);
    for (std::size_t k = 0; k < K; ++k) sum[k] += coef * v[k];
  }
  for (auto& s : sum) s *= h / 6.0;
  return sum;
}

}  // namespace wigcoh
