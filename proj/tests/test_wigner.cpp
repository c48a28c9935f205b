#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "wigcoh/wigner.hpp"

using namespace wigcoh;

namespace {

void check_su2(const Matrix2c& d, double tol = 1e-12) {
  CHECK((d.adjoint() * d - Matrix2c::Identity()).norm() <= tol);
  CHECK(std::abs(d.determinant() - Complex(1.0, 0.0)) <= tol);
}

}  // namespace

TEST_CASE("trivial rotations") {
  const auto kin = ParticleKinematics::make(1.0, Vec3::UnitX());
  const auto no_boost = wigner_general(BoostParams::along_z(0.0), kin, 1.3);
  CHECK(no_boost.cos_half == 1.0);
  CHECK(no_boost.sin_half == 0.0);
  const auto at_rest = wigner_general(BoostParams::along_z(2.0), kin, 0.0);
  CHECK(at_rest.cos_half == 1.0);
  CHECK(at_rest.sin_half == 0.0);

  const auto w0 = wigner_1d(BoostParams::along_z(0.0), 0.3, 0.5);
  CHECK(w0.sin_half == 0.0);
  CHECK(w0.axis == Vec3::UnitY());
  const auto wp = wigner_1d(BoostParams::along_z(1.0), 0.0, 0.5);
  CHECK(wp.sin_half == 0.0);
  CHECK(wp.cos_half == 1.0);

  CHECK(wigner_3d_zboost(BoostParams::along_z(0.0), Vec3(0.1, 0.2, 0.3), 1.0)
            .isApprox(Matrix2c::Identity(), 1e-15));
  CHECK_THROWS_AS(wigner_general(BoostParams::along_z(1.0), kin, -0.1), InvalidKinematics);
  CHECK_THROWS_AS(wigner_1d(BoostParams::along_z(1.0), 0.1, 0.0), InvalidKinematics);
  CHECK_THROWS_AS(wigner_3d_zboost(BoostParams::along_z(1.0), Vec3::Zero(), -1.0),
                  InvalidKinematics);
}

TEST_CASE("z boost, x momentum against the 4x4 Lorentz product") {
  const double alpha = 1.0;
  const double beta = 0.5;
  const auto w = wigner_general(BoostParams::along_z(alpha),
                                ParticleKinematics::make(1.0, Vec3::UnitX()), beta);
  const Eigen::Matrix3d oracle = testing::wigner_rotation_4x4(Vec3::UnitZ(), alpha, Vec3::UnitX(), beta);
  CHECK((testing::so3_from_su2(w.matrix()) - oracle).norm() <= 1e-12);
  // Rotation angle from the trace of the SO(3) matrix.
  const double cos_phi = 0.5 * (oracle.trace() - 1.0);
  CHECK(std::abs(2.0 * w.cos_half * w.cos_half - 1.0 - cos_phi) <= 1e-13);
  CHECK(w.axis.isApprox(Vec3::UnitY(), 1e-15));
  CHECK(w.sin_half > 0.0);
}

TEST_CASE("general formula matches the Lorentz product on random samples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rap(0.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double alpha = rap(rng);
    const double beta = rap(rng);
    const Vec3 e = testing::random_unit(rng);
    const Vec3 f = testing::random_unit(rng);
    const auto w = wigner_general(BoostParams::along(e, alpha), ParticleKinematics::make(1.0, f), beta);
    const Eigen::Matrix3d oracle = testing::wigner_rotation_4x4(e, alpha, f, beta);
    worst = std::max(worst, (testing::so3_from_su2(w.matrix()) - oracle).cwiseAbs().maxCoeff());
    check_su2(w.matrix());
    CHECK(std::abs(w.cos_half * w.cos_half + w.sin_half * w.sin_half - 1.0) <= 1e-12);
    CHECK(w.sin_half >= 0.0);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("collinear boosts give no rotation") {
  const auto kin = ParticleKinematics::make(2.0, Vec3::UnitZ());
  for (double alpha : {0.3, 1.0, 4.0}) {
    CHECK(wigner_general(BoostParams::along_z(alpha), kin, 1.2).sin_half == 0.0);
    CHECK(wigner_general(BoostParams::along_z(-alpha), kin, 1.2).sin_half == 0.0);
    const Matrix2c d = wigner_3d_zboost(BoostParams::along_z(alpha), Vec3(0.0, 0.0, 0.7), 2.0);
    CHECK((d - Matrix2c::Identity()).norm() <= 1e-14);
  }
}

TEST_CASE("1D rotation") {
  const double m = 0.5;
  const auto boost = BoostParams::along_z(1.0);
  const double p = 0.1 * m;
  const auto w1 = wigner_1d(boost, p, m);
  const auto wg = wigner_general(boost, ParticleKinematics::make(m, Vec3::UnitX()),
                                 std::asinh(p / m));
  CHECK(std::abs(w1.cos_half - wg.cos_half) <= 1e-14);
  CHECK(std::abs(w1.sin_half - wg.sin_half) <= 1e-14);
  CHECK(w1.axis == Vec3::UnitY());

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const auto b = BoostParams::along_z(u(rng));
    const double q = u(rng) * m;
    const auto plus = wigner_1d(b, q, m);
    const auto minus = wigner_1d(b, -q, m);
    CHECK(minus.cos_half == plus.cos_half);
    CHECK(minus.sin_half == -plus.sin_half);
    CHECK(minus.axis == Vec3::UnitY());
    check_su2(plus.matrix());
    check_su2(minus.matrix());
  }

  // Small-momentum Taylor term.
  for (double alpha : {0.5, 1.0, 3.0}) {
    const double s = 1e-4;
    const auto w = wigner_1d(BoostParams::along_z(alpha), s * m, m);
    const double taylor = std::sinh(0.5 * alpha) * s / 2.0 / std::cosh(0.5 * alpha);
    // sin(phi/2) = sinh(alpha/2) sinh(beta/2) / sqrt(...) ~ tanh(alpha/2) s/2 as s -> 0.
    CHECK(std::abs(w.sin_half - taylor) <= 10.0 * s * s * s);
  }
}

TEST_CASE("3D z-boost closed form") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.5);
  std::uniform_real_distribution<double> rap(-4.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const auto boost = BoostParams::along_z(rap(rng));
    const Vec3 p(g(rng), g(rng), g(rng));
    check_su2(wigner_3d_zboost(boost, p, 0.8));
  }

  for (double px : {-2.0, -0.3, 0.05, 1.0, 7.0}) {
    for (double alpha : {0.5, 2.0}) {
      const auto boost = BoostParams::along_z(alpha);
      const Matrix2c d3 = wigner_3d_zboost(boost, Vec3(px, 0.0, 0.0), 0.5);
      const Matrix2c d1 = wigner_1d(boost, px, 0.5).matrix();
      CHECK((d3 - d1).norm() <= 1e-13);
    }
  }

  // Oracle for a generic momentum: same SO(3) rotation as the 4x4 product.
  for (int i = 0; i < 200; ++i) {
    const double alpha = std::abs(rap(rng));
    const Vec3 p(g(rng), g(rng), g(rng));
    const double m = 0.8;
    const Eigen::Matrix3d oracle =
        testing::wigner_rotation_4x4(Vec3::UnitZ(), alpha, p.normalized(), std::asinh(p.norm() / m), m);
    CHECK((testing::so3_from_su2(wigner_3d_zboost(BoostParams::along_z(alpha), p, m)) - oracle)
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
  CHECK_THROWS_AS(z_rapidity(BoostParams::along(Vec3::UnitX(), 1.0)), InvalidKinematics);
  CHECK(z_rapidity(BoostParams::along_z(-2.0)) == -2.0);
}
