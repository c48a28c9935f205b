#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "wigcoh/coherence.hpp"
#include "wigcoh/srdm.hpp"
#include "wigcoh/wigner.hpp"

using namespace wigcoh;

namespace {

constexpr double kElectron = 0.5;
constexpr double kNeutron = 939.36;

void check_valid(const QubitDensity& rho) {
  CHECK(std::abs(rho.trace() - 1.0) <= 1e-10);
  CHECK(rho.eigenvalues()[0] >= -1e-10);
  const Matrix2c m = rho.matrix();
  CHECK(m(1, 0) == std::conj(m(0, 1)));
}

QuadratureConfig simpson() {
  QuadratureConfig q;
  q.scheme = QuadratureScheme::AdaptiveSimpson;
  return q;
}

}  // namespace

TEST_CASE("pointwise integrand identities") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rap(0.0, 6.0);
  std::normal_distribution<double> mom(0.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const auto boost = BoostParams::along_z(rap(rng));
    const double m = 0.5;
    const double p = mom(rng);
    const auto t = integrand_terms_1d(p, boost, m);
    CHECK(std::abs(t.a_sq + t.b_sq - 2.0) <= 2e-12);
    CHECK(t.a_sq * t.b_sq >= 0.0);
    CHECK(t.ab * t.ab <= t.a_sq * t.b_sq * (1.0 + 1e-12));
    CHECK(std::abs(t.ab * t.ab - t.a_sq * t.b_sq) <= 1e-12 * t.a_sq * t.b_sq + 1e-300);
    CHECK(std::abs(t.tilt - (t.a_sq - 1.0)) <= 1e-14);
    CHECK(std::abs(t.offdiag_deficit - (1.0 - t.ab)) <= 1e-14);

    // A_p^2 and A_p B_p written out directly.
    const double s = p / m;
    const double c = std::sqrt(1.0 + s * s);
    const double denom = 1.0 + boost.cosh_alpha() * c;
    CHECK(std::abs(t.a_sq - (1.0 + boost.sinh_alpha() * s / denom)) <= 1e-12);
    CHECK(std::abs(t.ab - (boost.cosh_alpha() + c) / denom) <= 1e-12);

    const double pz = mom(rng) * 100.0;
    const double pp = std::pow(mom(rng) * 100.0, 2);
    const auto u = integrand_terms_3d(pz, pp, boost, kNeutron);
    const double ab = u.energy_factor * u.boosted_factor;
    CHECK(std::abs(u.spin_up + u.spin_down - ab) <= 1e-12 * ab);
    double up, down;
    testing::diag_3d_integrand(std::sqrt(pp), 0.0, pz, boost.alpha, kNeutron, up, down);
    CHECK(std::abs(u.spin_up / ab - up) <= 1e-12);
    CHECK(std::abs(u.spin_down / ab - down) <= 1e-12 * std::max(1.0, down) + 1e-300);
  }
}

TEST_CASE("SRDM integrand equals the rotated spinor") {
  // |0>+|1> rotated by D(p) reproduces A_p and B_p.
  const double m = 0.5;
  const auto boost = BoostParams::along_z(1.7);
  for (double p : {-1.0, -0.2, 0.0, 0.3, 2.0}) {
    const Eigen::Vector2cd psi = wigner_1d(boost, p, m).matrix() * Eigen::Vector2cd(1.0, 1.0);
    const auto t = integrand_terms_1d(p, boost, m);
    CHECK(std::abs(std::norm(psi(0)) - t.a_sq) <= 1e-13);
    CHECK(std::abs(std::norm(psi(1)) - t.b_sq) <= 1e-13);
    CHECK(std::abs((psi(0) * std::conj(psi(1))).real() - t.ab) <= 1e-13);
  }
}

TEST_CASE("1D zero boost and sharp packets") {
  for (double sigma : {0.0, 0.1, 0.5}) {
    for (double center : {0.0, 0.29}) {
      const auto r = srdm_boosted_1d(GaussianPacket::one_d(sigma, center), BoostParams::along_z(0.0),
                                     kElectron);
      CHECK(std::abs(r.rho.rho11() - 0.5) <= 1e-15);
      CHECK(std::abs(r.rho.rho12() - 0.5) <= 1e-15);
    }
  }
  for (double alpha : {0.5, 2.0, 5.0}) {
    const auto r = srdm_boosted_1d(GaussianPacket::one_d(0.0), BoostParams::along_z(alpha), kElectron);
    CHECK(r.rho.rho12().real() == 0.5);
    CHECK(r.offdiag_deficit == 0.0);
    const auto narrow =
        srdm_boosted_1d(GaussianPacket::one_d(1e-6), BoostParams::along_z(alpha), kElectron);
    CHECK(std::abs(narrow.rho.rho12() - 0.5) <= 1e-11);

    const double pc = kElectron / (2.0 * std::sqrt(3.0)) * 2.0;  // p/m = 1/sqrt 3
    const auto rot = wigner_1d(BoostParams::along_z(alpha), pc, kElectron);
    const auto sharp =
        srdm_boosted_1d(GaussianPacket::one_d(0.0, pc), BoostParams::along_z(alpha), kElectron);
    const double expected = 0.5 * (rot.cos_half * rot.cos_half - rot.sin_half * rot.sin_half);
    CHECK(std::abs(sharp.rho.rho12().real() - expected) <= 1e-15);
    CHECK(std::abs(coherence_frobenius(sharp.rho) - 1.0) <= 1e-12);
  }
}

TEST_CASE("1D quadrature against a brute-force Riemann sum") {
  const double alpha = 2.0;
  const double sigma = 0.05 * kElectron;
  const auto r = srdm_boosted_1d(GaussianPacket::one_d(sigma), BoostParams::along_z(alpha), kElectron);
  const auto o = testing::riemann_srdm_1d(alpha, sigma, 0.0, kElectron);
  CHECK(std::abs(r.rho.rho12().real() - o.rho12) <= 1e-9);
  CHECK(std::abs(r.rho.rho11() - o.rho11) <= 1e-9);
  check_valid(r.rho);
}

TEST_CASE("analytic 1D limit") {
  CHECK(srdm_analytic_1d(0.0, 0.3, kElectron).rho12().real() == 0.5);
  CHECK(srdm_analytic_1d(2.0, 0.0, kElectron).rho12().real() == 0.5);
  const double ch = std::cosh(2.0);
  const double expected = 0.5 - 0.125 * (ch - 1.0) / (ch + 1.0) * 0.01;
  CHECK(std::abs(srdm_analytic_1d(2.0, 0.1 * kElectron, kElectron).rho12().real() - expected) <= 1e-16);

  const auto r = srdm_boosted_1d(GaussianPacket::one_d(0.1 * kElectron), BoostParams::along_z(2.0),
                                 kElectron);
  const double d_num = r.offdiag_deficit;
  const double d_ana = analytic_offdiag_deficit_1d(2.0, 0.1 * kElectron, kElectron);
  CHECK(std::abs(r.rho.rho12().real() - expected) <= 1e-4 * expected);
  CHECK(std::abs(d_num - d_ana) <= 0.02 * d_ana);

  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    double prev = 0.0;
    for (double ratio : {0.02, 0.01, 0.005}) {
      const double sigma = ratio * kElectron;
      const auto num = srdm_boosted_1d(GaussianPacket::one_d(sigma), BoostParams::along_z(alpha), kElectron);
      const double gap = std::abs(num.rho.rho12().real() -
                                  srdm_analytic_1d(alpha, sigma, kElectron).rho12().real());
      CHECK(gap <= 5.0 * std::pow(ratio, 4));
      // Measured on deficits to keep the O(r^4) gap free of rounding in 1/2 - x.
      const double gap_d = std::abs(num.offdiag_deficit - analytic_offdiag_deficit_1d(alpha, sigma, kElectron));
      if (prev > 0.0) {
        CHECK(prev / gap_d >= 12.0);
        CHECK(prev / gap_d <= 20.0);
      }
      prev = gap_d;
    }
  }
}

TEST_CASE("1D monotonicity, case (i)") {
  const int n = 50;
  std::vector<double> grid(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double alpha = 5.0 * i / (n - 1);
      const double sigma = kElectron * j / (n - 1);
      const auto r = srdm_boosted_1d(GaussianPacket::one_d(sigma), BoostParams::along_z(alpha), kElectron);
      check_valid(r.rho);
      grid[i * n + j] = r.rho.rho12().real();
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i > 0 && j > 0) CHECK(grid[i * n + j] <= grid[(i - 1) * n + j]);
      if (j > 0 && i > 0) CHECK(grid[i * n + j] <= grid[i * n + j - 1]);
    }
  }
}

TEST_CASE("case (ii) decreases in alpha and sigma") {
  const double pc = kElectron / std::sqrt(3.0);  // 1/(2 sqrt 3) MeV at m = 0.5
  double prev_row = 1.0;
  for (int i = 1; i <= 10; ++i) {
    const double alpha = 0.5 * i;
    double prev = 1.0;
    for (int j = 0; j <= 10; ++j) {
      const auto r = srdm_boosted_1d(GaussianPacket::one_d(0.05 * j, pc), BoostParams::along_z(alpha),
                                     kElectron);
      const double v = r.rho.rho12().real();
      CHECK(v < prev);
      if (j == 0) {
        CHECK(v < prev_row);
        prev_row = v;
      }
      prev = v;
    }
  }
}

TEST_CASE("quadrature schemes agree") {
  for (double alpha : {0.0, 0.7, 2.5, 5.0}) {
    for (double sigma : {0.01, 0.1, 0.3, 0.5}) {
      for (double center : {0.0, kElectron / std::sqrt(3.0)}) {
        const auto p = GaussianPacket::one_d(sigma, center);
        const auto gh = srdm_boosted_1d(p, BoostParams::along_z(alpha), kElectron);
        const auto si = srdm_boosted_1d(p, BoostParams::along_z(alpha), kElectron, simpson());
        CHECK(std::abs(gh.rho.rho11() - si.rho.rho11()) <= 1e-9);
        CHECK(std::abs(gh.rho.rho12() - si.rho.rho12()) <= 1e-9);
        CHECK(std::abs(gh.coherence_deficit - si.coherence_deficit) <= 1e-9);
      }
    }
  }
  for (double alpha : {1.0, 4.0}) {
    for (double sigma : {10.0, 100.0}) {
      const auto gh = srdm_boosted_3d(sigma, BoostParams::along_z(alpha), kNeutron);
      const auto si = srdm_boosted_3d(sigma, BoostParams::along_z(alpha), kNeutron, simpson());
      CHECK(std::abs(gh.rho.rho22() - si.rho.rho22()) <= 1e-9);
    }
  }
}

TEST_CASE("quadrature failure is reported") {
  QuadratureConfig q;
  q.order = 8;
  q.max_order = 16;
  q.rel_tol = 1e-14;
  CHECK_THROWS_AS(srdm_boosted_1d(GaussianPacket::one_d(0.5), BoostParams::along_z(3.0), kElectron, q),
                  NumericFailure);
  try {
    srdm_boosted_1d(GaussianPacket::one_d(0.5), BoostParams::along_z(3.0), kElectron, q);
  } catch (const NumericFailure& e) {
    CHECK(e.error_estimate() > 0.0);
  }
  CHECK_THROWS_AS(srdm_boosted_3d(50.0, BoostParams::along(Vec3::UnitX(), 1.0), kNeutron), InvalidKinematics);
}

TEST_CASE("3D trivial cases") {
  for (double sigma : {0.0, 1.0, 100.0}) {
    const auto r = srdm_boosted_3d(sigma, BoostParams::along_z(0.0), kNeutron);
    CHECK(std::abs(r.rho.rho11() - 1.0) <= 1e-14);
    CHECK(r.rho.rho22() <= 1e-14);
  }
  const auto sharp = srdm_boosted_3d(0.0, BoostParams::along_z(4.0), kNeutron);
  CHECK(sharp.rho.rho11() == 1.0);
  CHECK(sharp.coherence_deficit == 0.0);
  const auto narrow = srdm_boosted_3d(1e-3, BoostParams::along_z(4.0), kNeutron);
  CHECK(narrow.rho.rho22() <= 1e-12);
  CHECK(std::abs(narrow.rho.rho12()) == 0.0);
}

TEST_CASE("3D quadrature against a full 3D Riemann sum") {
  const auto r = srdm_boosted_3d(50.0, BoostParams::along_z(3.0), kNeutron);
  const auto o = testing::riemann_srdm_3d(3.0, 50.0, kNeutron, 120);
  CHECK(std::abs(r.rho.rho11() - o.rho11) <= 1e-7);
  CHECK(std::abs(r.rho.rho22() - o.rho22) <= 1e-7);
  check_valid(r.rho);

  // The azimuth-reduced sum matches the full cube.
  const auto red = testing::riemann_srdm_3d_reduced(3.0, 50.0, kNeutron, 400);
  CHECK(std::abs(red.rho11 - o.rho11) <= 1e-7);
  CHECK(std::abs(red.rho22 - o.rho22) <= 1e-7);
}

TEST_CASE("narrow 3D closed form") {
  CHECK(srdm_narrow_3d(0.0, 5.0, kNeutron).rho11() == 1.0);
  // sigma/(2m) tanh(alpha/2) = 0.1
  const double alpha = 2.0;
  const double sigma = 0.2 * kNeutron / std::tanh(1.0);
  const auto n = srdm_narrow_3d(alpha, sigma, kNeutron);
  CHECK(std::abs(n.rho11() - 0.995) <= 1e-15);
  CHECK(std::abs(n.rho22() - 0.005) <= 1e-15);

  CHECK(coherence_deficit_narrow(0.0, 1.0, kNeutron) == 0.0);
  const double ucn = coherence_deficit_narrow(50.0, 3.0e-13, kNeutron);
  CHECK(ucn == doctest::Approx(std::pow(3.0e-13 / (2 * kNeutron), 2)).epsilon(1e-14));
  CHECK(ucn == doctest::Approx(2.55e-32).epsilon(0.01));
  const double thermal = coherence_deficit_narrow(50.0, 2.5e-8, kNeutron);
  CHECK(thermal == doctest::Approx(1.77e-22).epsilon(0.01));
}

TEST_CASE("narrow 3D closed form against quadrature") {
  const auto q = srdm_boosted_3d(1.0, BoostParams::along_z(2.0), kNeutron);
  // 1 - n_z formed by subtraction carries ~1e-15 absolute rounding.
  const double numeric = 1.0 - bloch_from_density(q.rho).n3;
  const double quad_deficit = 2.0 * q.rho.rho22();
  CHECK(std::abs(numeric - quad_deficit) <= 1e-14);
  CHECK(std::abs(q.coherence_deficit - quad_deficit) <= 1e-12 * quad_deficit);
  const double closed = coherence_deficit_narrow(2.0, 1.0, kNeutron);
  CHECK(std::abs(quad_deficit - closed) <= 1e-6 * closed);
}
