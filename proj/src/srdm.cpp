#include "wigcoh/srdm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wigcoh/wigner.hpp"

namespace wigcoh {

namespace {

constexpr double kTinyScale = 1e-300;

void check_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw InvalidKinematics("mass must be positive");
  }
}

bool within(double delta, double scale, double rel_tol) {
  return std::abs(delta) <= rel_tol * std::max(std::abs(scale), kTinyScale);
}

// Each pairwise term carries ~1e-16 absolute error in sin(theta_i - theta_j),
// so the purity deficit has a noise floor proportional to its square root.
bool purity_converged(double delta, double value, double rel_tol) {
  return std::abs(delta) <= rel_tol * std::abs(value) + 1e-15 * std::sqrt(std::abs(value));
}

[[noreturn]] void fail(const std::string& what, double estimate) {
  throw NumericFailure(what + " (error estimate " + std::to_string(estimate) + ")", estimate);
}

// Moments of the 1D packet: x = <tilt> = rho11 - rho22, d = <1 - AB> = 1 - 2 rho12,
// and 1 - |n|^2 = 4 det(rho).
struct Moments1D {
  double tilt = 0.0;
  double offdiag_deficit = 0.0;
  double one_minus_purity = 0.0;
};

Moments1D gauss_hermite_1d(const GaussianPacket& packet, const BoostParams& boost, double mass,
                           int order) {
  const NodeTable& t = gauss_hermite(order);
  const double norm = 1.0 / std::sqrt(std::numbers::pi);
  const auto n = t.nodes.size();
  std::vector<double> w(n), c(n), s(n);
  Moments1D out;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = packet.center + packet.sigma * t.nodes[i];
    const auto terms = integrand_terms_1d(p, boost, mass);
    const auto rot = wigner_1d(boost, p, mass);
    w[i] = t.weights[i] * norm;
    c[i] = rot.cos_half;
    s[i] = rot.sin_half;
    out.tilt += w[i] * terms.tilt;
    out.offdiag_deficit += w[i] * terms.offdiag_deficit;
  }
  // 4 det(rho) = 2 sum_ij w_i w_j sin^2(theta_i - theta_j), a sum of
  // non-negative terms, so tiny mixedness is resolved without cancellation.
  double pairs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double sd = s[i] * c[j] - c[i] * s[j];
      row += w[j] * sd * sd;
    }
    pairs += w[i] * row;
  }
  out.one_minus_purity = 4.0 * pairs;
  return out;
}

Moments1D simpson_1d(const GaussianPacket& packet, const BoostParams& boost, double mass,
                     const QuadratureConfig& quad, double& error) {
  const double lo = packet.center - quad.window * packet.sigma;
  const double hi = packet.center + quad.window * packet.sigma;
  auto f = [&](double p) -> std::array<double, 2> {
    const double rho = packet.density_1d(p);
    const auto terms = integrand_terms_1d(p, boost, mass);
    return {rho * terms.tilt, rho * terms.offdiag_deficit};
  };
  const auto coarse = composite_simpson<2>(f, lo, hi, 200);
  const std::array<double, 2> tol{quad.rel_tol, quad.rel_tol * std::max(coarse[1], kTinyScale)};
  const auto r = adaptive_simpson<2>(f, lo, hi, tol, quad.max_depth);
  error = 0.5 * std::max(r.error[0], r.error[1]);
  if (!r.converged) fail("adaptive Simpson did not converge for the 1D packet", error);

  Moments1D out;
  out.tilt = r.value[0];
  out.offdiag_deficit = r.value[1];
  const double d = out.offdiag_deficit;
  out.one_minus_purity = std::max(0.0, d * (2.0 - d) - out.tilt * out.tilt);
  return out;
}

SrdmResult finish_1d(const Moments1D& m, double error) {
  SrdmResult r{QubitDensity::from_entries(0.5 * (1.0 + m.tilt), 0.5 * (1.0 - m.offdiag_deficit),
                                          0.5 * (1.0 - m.tilt)),
               0.0, 0.0, error};
  const double purity = std::sqrt(std::max(0.0, 1.0 - m.one_minus_purity));
  r.coherence_deficit = m.one_minus_purity / (1.0 + purity);
  r.offdiag_deficit = m.offdiag_deficit <= 1.0 ? m.offdiag_deficit
                                              : 2.0 - m.offdiag_deficit;
  return r;
}

struct Moments3D {
  double up = 0.0;
  double down = 0.0;
};

Moments3D gauss_3d(double sigma, const BoostParams& boost, double mass, int order) {
  const NodeTable& h = gauss_hermite(order);
  const NodeTable& l = gauss_laguerre(order);
  Moments3D out;
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    const double pz = sigma * h.nodes[i];
    double up = 0.0;
    double down = 0.0;
    for (std::size_t j = 0; j < l.nodes.size(); ++j) {
      const auto t = integrand_terms_3d(pz, sigma * sigma * l.nodes[j], boost, mass);
      const double ab = t.energy_factor * t.boosted_factor;
      up += l.weights[j] * t.spin_up / ab;
      down += l.weights[j] * t.spin_down / ab;
    }
    out.up += h.weights[i] * up;
    out.down += h.weights[i] * down;
  }
  const double norm = 1.0 / std::sqrt(std::numbers::pi);
  out.up *= norm;
  out.down *= norm;
  return out;
}

// Nested Simpson over u = pz/sigma in [-w, w] and r = p_perp/sigma in [0, w];
// the azimuth is integrated out analytically.
Moments3D simpson_3d(double sigma, const BoostParams& boost, double mass,
                     const QuadratureConfig& quad, double& error) {
  const double w = quad.window;
  auto inner = [&](double u) {
    return [&, u](double r) -> std::array<double, 2> {
      const auto t = integrand_terms_3d(sigma * u, sigma * sigma * r * r, boost, mass);
      const double weight = r * std::exp(-r * r) / (t.energy_factor * t.boosted_factor);
      return {weight * t.spin_up, weight * t.spin_down};
    };
  };
  const double norm = 2.0 / std::sqrt(std::numbers::pi);
  auto coarse_outer = [&](double u) {
    const auto v = composite_simpson<2>(inner(u), 0.0, w, 40);
    const double g = std::exp(-u * u);
    return std::array<double, 2>{g * v[0], g * v[1]};
  };
  const auto coarse = composite_simpson<2>(coarse_outer, -w, w, 40);
  const std::array<double, 2> tol{quad.rel_tol / norm,
                                  quad.rel_tol * std::max(coarse[1], kTinyScale)};
  const std::array<double, 2> inner_tol{0.1 * tol[0], 0.1 * tol[1]};

  bool converged = true;
  auto outer = [&](double u) -> std::array<double, 2> {
    const auto r = adaptive_simpson<2>(inner(u), 0.0, w, inner_tol, quad.max_depth);
    converged = converged && r.converged;
    const double g = std::exp(-u * u);
    return {g * r.value[0], g * r.value[1]};
  };
  const auto r = adaptive_simpson<2>(outer, -w, w, tol, quad.max_depth);
  error = norm * std::max(r.error[0], r.error[1]);
  if (!(converged && r.converged)) fail("adaptive Simpson did not converge for the 3D packet", error);
  return {norm * r.value[0], norm * r.value[1]};
}

SrdmResult finish_3d(const Moments3D& m, double error) {
  SrdmResult r{QubitDensity::from_entries(m.up, 0.0, m.down), 0.0, 1.0, error};
  r.coherence_deficit = 2.0 * std::min(m.up, m.down);
  return r;
}

}  // namespace

SrdmIntegrandTerms1D integrand_terms_1d(double p, const BoostParams& boost, double mass) {
  check_mass(mass);
  const double alpha = z_rapidity(boost);
  const double a = std::sinh(alpha);
  const double b = std::cosh(alpha);
  const double s = p / mass;
  const double c = std::sqrt(1.0 + s * s);
  const double denom = 1.0 + b * c;
  const double sh = std::sinh(0.5 * alpha);

  SrdmIntegrandTerms1D t;
  t.tilt = a * s / denom;
  t.a_sq = 1.0 + t.tilt;
  t.b_sq = 1.0 - t.tilt;
  t.ab = (b + c) / denom;
  // (b - 1)(c - 1) / (1 + bc) with b - 1 = 2 sinh^2(alpha/2), c - 1 = s^2 / (c + 1).
  t.offdiag_deficit = 2.0 * sh * sh * (s * s / (c + 1.0)) / denom;
  return t;
}

SrdmIntegrandTerms3D integrand_terms_3d(double pz, double p_perp_sq, const BoostParams& boost,
                                        double mass) {
  check_mass(mass);
  const double alpha = z_rapidity(boost);
  const double p0 = std::sqrt(mass * mass + pz * pz + p_perp_sq);
  const double ch = std::cosh(0.5 * alpha);
  const double sh = std::sinh(0.5 * alpha);

  SrdmIntegrandTerms3D t;
  t.energy_factor = p0 + mass;
  t.boosted_factor = p0 * std::cosh(alpha) + pz * std::sinh(alpha) + mass;
  // A^2 cosh^2 + pz^2 sinh^2 + A pz sinh(alpha), written as a square.
  const double amp = t.energy_factor * ch + pz * sh;
  t.spin_up = amp * amp;
  t.spin_down = p_perp_sq * sh * sh;
  return t;
}

SrdmResult srdm_boosted_1d(const GaussianPacket& packet, const BoostParams& boost, double mass,
                           const QuadratureConfig& quad) {
  if (packet.dimension != Dimension::OneD) throw InvalidState("expected a 1D packet");
  check_mass(mass);
  quad.validate();

  if (packet.is_sharp()) {
    // Delta-function packet: a pure Wigner rotation of (|0> + |1>)/sqrt(2).
    const auto rot = wigner_1d(boost, packet.center, mass);
    const double c = rot.cos_half;
    const double s = rot.sin_half;
    const double cos_phi = (c - s) * (c + s);
    SrdmResult r{QubitDensity::from_entries(0.5 * (c + s) * (c + s), 0.5 * cos_phi,
                                            0.5 * (c - s) * (c - s)),
                 0.0, cos_phi >= 0.0 ? 2.0 * s * s : 2.0 * c * c, 0.0};
    return r;
  }

  if (quad.scheme == QuadratureScheme::AdaptiveSimpson) {
    double error = 0.0;
    const auto m = simpson_1d(packet, boost, mass, quad, error);
    return finish_1d(m, error);
  }

  int order = quad.order_1d();
  Moments1D coarse = gauss_hermite_1d(packet, boost, mass, order);
  double error = 0.0;
  while (true) {
    const int next = 2 * order;
    if (next > quad.max_order) {
      fail("Gauss-Hermite did not converge below order " + std::to_string(quad.max_order), error);
    }
    const Moments1D fine = gauss_hermite_1d(packet, boost, mass, next);
    error = 0.5 * std::max(std::abs(fine.tilt - coarse.tilt),
                           std::abs(fine.offdiag_deficit - coarse.offdiag_deficit));
    const bool ok =
        error <= quad.rel_tol &&
        within(fine.offdiag_deficit - coarse.offdiag_deficit, fine.offdiag_deficit, quad.rel_tol) &&
        purity_converged(fine.one_minus_purity - coarse.one_minus_purity,
                         fine.one_minus_purity, quad.rel_tol);
    if (ok) return finish_1d(fine, error);
    coarse = fine;
    order = next;
  }
}

SrdmResult srdm_boosted_3d(double sigma, const BoostParams& boost, double mass,
                           const QuadratureConfig& quad) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidState("packet width must be finite and non-negative");
  }
  check_mass(mass);
  quad.validate();
  z_rapidity(boost);

  if (sigma == 0.0) {
    // Particle at rest: collinear boost, no Wigner rotation.
    return {QubitDensity::from_entries(1.0, 0.0, 0.0), 0.0, 1.0, 0.0};
  }

  if (quad.scheme == QuadratureScheme::AdaptiveSimpson) {
    double error = 0.0;
    const auto m = simpson_3d(sigma, boost, mass, quad, error);
    return finish_3d(m, error);
  }

  int order = quad.order_3d();
  Moments3D coarse = gauss_3d(sigma, boost, mass, order);
  double error = 0.0;
  while (true) {
    const int next = 2 * order;
    if (next > quad.max_order) {
      fail("Gauss-Hermite/Laguerre did not converge below order " +
               std::to_string(quad.max_order),
           error);
    }
    const Moments3D fine = gauss_3d(sigma, boost, mass, next);
    error = std::max(std::abs(fine.up - coarse.up), std::abs(fine.down - coarse.down));
    if (error <= quad.rel_tol && within(fine.down - coarse.down, fine.down, quad.rel_tol)) {
      return finish_3d(fine, error);
    }
    coarse = fine;
    order = next;
  }
}

QubitDensity srdm_analytic_1d(double alpha, double sigma, double mass) {
  return QubitDensity::from_entries(0.5, 0.5 * (1.0 - analytic_offdiag_deficit_1d(alpha, sigma, mass)),
                                    0.5);
}

double analytic_offdiag_deficit_1d(double alpha, double sigma, double mass) {
  // (cosh a - 1)/(cosh a + 1) = tanh^2(a/2).
  const double t = std::tanh(0.5 * alpha);
  const double r = sigma / mass;
  return 0.25 * t * t * r * r;
}

QubitDensity srdm_narrow_3d(double alpha, double sigma, double mass) {
  const double deficit = coherence_deficit_narrow(alpha, sigma, mass);
  return QubitDensity::from_entries(1.0 - 0.5 * deficit, 0.0, 0.5 * deficit);
}

double coherence_deficit_narrow(double alpha, double sigma, double mass) {
  const double x = sigma / (2.0 * mass) * std::tanh(0.5 * std::abs(alpha));
  return x * x;
}

}  // namespace wigcoh
