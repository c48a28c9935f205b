#pragma once

// Shared domain types. Natural units (c = hbar = 1); masses, momenta and
// packet widths are all in MeV.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wigcoh {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kBlochTolerance = 1e-10;

class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidKinematics : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature did not reach the requested tolerance.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, double error_estimate)
      : std::runtime_error(what), error_estimate_(error_estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

// Pure boost of the observer frame: velocity tanh(alpha) along `axis`.
struct BoostParams {
  double alpha = 0.0;
  Vec3 axis = Vec3::UnitZ();

  // Negative rapidities are folded into the axis so that alpha >= 0.
  static BoostParams along(const Vec3& axis, double rapidity);
  static BoostParams along_z(double rapidity) { return along(Vec3::UnitZ(), rapidity); }

  double velocity() const { return std::tanh(alpha); }
  double sinh_alpha() const { return std::sinh(alpha); }
  double cosh_alpha() const { return std::cosh(alpha); }
};

struct ParticleKinematics {
  double mass = 1.0;
  Vec3 direction = Vec3::UnitX();

  static ParticleKinematics make(double mass, const Vec3& direction);
};

// Rapidity beta of a particle with momentum magnitude p: sinh(beta) = p/m.
double rapidity_from_momentum(double p, double mass);

enum class Dimension { OneD, ThreeD };

// Momentum-space Gaussian packet. The amplitude is exp(-(p-center)^2/(2 sigma^2))
// so the probability density carries exp(-(p-center)^2/sigma^2).
struct GaussianPacket {
  Dimension dimension = Dimension::OneD;
  double sigma = 0.0;
  double center = 0.0;

  static GaussianPacket one_d(double sigma, double center = 0.0);
  static GaussianPacket three_d(double sigma);

  bool is_sharp() const { return sigma == 0.0; }

  // |f(p)|^2 for the 1D packet.
  double density_1d(double p) const;
  // |psi(p)|^2 for the isotropic zero-centred 3D packet.
  double density_3d(const Vec3& p) const;
};

// 2x2 Hermitian unit-trace positive semidefinite matrix. Only rho11, rho22
// and rho12 are stored, so Hermiticity holds by construction.
class QubitDensity {
 public:
  // Validates trace and positivity.
  static QubitDensity from_entries(double rho11, Complex rho12, double rho22);
  // Also validates Hermiticity of the input.
  static QubitDensity from_matrix(const Matrix2c& m);

  double rho11() const { return rho11_; }
  double rho22() const { return rho22_; }
  Complex rho12() const { return rho12_; }
  Complex rho21() const { return std::conj(rho12_); }

  double trace() const { return rho11_ + rho22_; }
  double determinant() const { return rho11_ * rho22_ - std::norm(rho12_); }
  // Ascending.
  std::array<double, 2> eigenvalues() const;
  Matrix2c matrix() const;

 private:
  QubitDensity(double rho11, Complex rho12, double rho22)
      : rho11_(rho11), rho22_(rho22), rho12_(rho12) {}

  double rho11_;
  double rho22_;
  Complex rho12_;
};

struct BlochVector {
  double n1 = 0.0;
  double n2 = 0.0;
  double n3 = 0.0;

  double norm() const { return std::sqrt(n1 * n1 + n2 * n2 + n3 * n3); }
};

BlochVector bloch_from_density(const QubitDensity& rho);
BlochVector bloch_from_density(const Matrix2c& rho);
QubitDensity density_from_bloch(const BlochVector& n);

namespace pauli {
Matrix2c identity();
Matrix2c x();
Matrix2c y();
Matrix2c z();
}  // namespace pauli

}  // namespace wigcoh
