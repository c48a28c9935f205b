#include "wigcoh/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wigcoh {

namespace {

Vec3 checked_unit(const Vec3& v, const char* what) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTolerance) {
    throw InvalidKinematics(std::string(what) + " must be a unit vector");
  }
  return v;
}

}  // namespace

BoostParams BoostParams::along(const Vec3& axis, double rapidity) {
  if (!std::isfinite(rapidity)) throw InvalidKinematics("rapidity must be finite");
  const Vec3 e = checked_unit(axis, "boost axis");
  return rapidity < 0.0 ? BoostParams{-rapidity, -e} : BoostParams{rapidity, e};
}

ParticleKinematics ParticleKinematics::make(double mass, const Vec3& direction) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw InvalidKinematics("mass must be positive");
  }
  return {mass, checked_unit(direction, "momentum direction")};
}

double rapidity_from_momentum(double p, double mass) {
  if (!(mass > 0.0)) throw InvalidKinematics("mass must be positive");
  return std::asinh(p / mass);
}

GaussianPacket GaussianPacket::one_d(double sigma, double center) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma) || !std::isfinite(center)) {
    throw InvalidState("packet width must be finite and non-negative");
  }
  return {Dimension::OneD, sigma, center};
}

GaussianPacket GaussianPacket::three_d(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidState("packet width must be finite and non-negative");
  }
  return {Dimension::ThreeD, sigma, 0.0};
}

double GaussianPacket::density_1d(double p) const {
  const double u = (p - center) / sigma;
  return std::exp(-u * u) / (std::sqrt(std::numbers::pi) * sigma);
}

double GaussianPacket::density_3d(const Vec3& p) const {
  const double norm = std::pow(std::sqrt(std::numbers::pi) * sigma, 3);
  return std::exp(-p.squaredNorm() / (sigma * sigma)) / norm;
}

QubitDensity QubitDensity::from_entries(double rho11, Complex rho12, double rho22) {
  if (!std::isfinite(rho11) || !std::isfinite(rho22) || !std::isfinite(rho12.real()) ||
      !std::isfinite(rho12.imag())) {
    throw InvalidState("density matrix entries must be finite");
  }
  if (std::abs(rho11 + rho22 - 1.0) > kTraceTolerance) {
    throw InvalidState("density matrix trace must be 1");
  }
  QubitDensity rho(rho11, rho12, rho22);
  if (rho.eigenvalues()[0] < -kPsdTolerance) {
    throw InvalidState("density matrix must be positive semidefinite");
  }
  return rho;
}

QubitDensity QubitDensity::from_matrix(const Matrix2c& m) {
  if (std::abs(m(0, 0).imag()) > kUnitTolerance || std::abs(m(1, 1).imag()) > kUnitTolerance ||
      std::abs(m(1, 0) - std::conj(m(0, 1))) > kUnitTolerance) {
    throw InvalidState("density matrix must be Hermitian");
  }
  return from_entries(m(0, 0).real(), m(0, 1), m(1, 1).real());
}

std::array<double, 2> QubitDensity::eigenvalues() const {
  const double half_trace = 0.5 * (rho11_ + rho22_);
  const double half_gap = std::hypot(0.5 * (rho11_ - rho22_), std::abs(rho12_));
  return {half_trace - half_gap, half_trace + half_gap};
}

Matrix2c QubitDensity::matrix() const {
  Matrix2c m;
  m << rho11_, rho12_, std::conj(rho12_), rho22_;
  return m;
}

BlochVector bloch_from_density(const QubitDensity& rho) {
  return {2.0 * rho.rho12().real(), -2.0 * rho.rho12().imag(), rho.rho11() - rho.rho22()};
}

BlochVector bloch_from_density(const Matrix2c& rho) {
  return bloch_from_density(QubitDensity::from_matrix(rho));
}

QubitDensity density_from_bloch(const BlochVector& n) {
  if (!std::isfinite(n.norm()) || n.norm() > 1.0 + kBlochTolerance) {
    throw InvalidState("Bloch vector lies outside the unit ball");
  }
  return QubitDensity::from_entries(0.5 * (1.0 + n.n3), Complex(0.5 * n.n1, -0.5 * n.n2),
                                    0.5 * (1.0 - n.n3));
}

namespace pauli {

Matrix2c identity() { return Matrix2c::Identity(); }

Matrix2c x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2c y() {
  Matrix2c m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix2c z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

}  // namespace wigcoh
