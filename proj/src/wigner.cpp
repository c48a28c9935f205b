#include "wigcoh/wigner.hpp"

#include <cmath>

namespace wigcoh {

namespace {

void check_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw InvalidKinematics("mass must be positive");
  }
}

// Projects (cos, sin) onto the unit circle; exact when no rotation occurs.
void normalise(WignerRotation& w) {
  const double r = std::hypot(w.cos_half, w.sin_half);
  w.cos_half /= r;
  w.sin_half /= r;
}

}  // namespace

double z_rapidity(const BoostParams& boost) {
  if (std::abs(std::abs(boost.axis.z()) - 1.0) > kUnitTolerance) {
    throw InvalidKinematics("boost axis must be along z");
  }
  return boost.axis.z() > 0.0 ? boost.alpha : -boost.alpha;
}

Matrix2c WignerRotation::matrix() const {
  const Complex i_sin(0.0, sin_half);
  return cos_half * pauli::identity() +
         i_sin * (axis.x() * pauli::x() + axis.y() * pauli::y() + axis.z() * pauli::z());
}

WignerRotation wigner_general(const BoostParams& boost, const ParticleKinematics& kin,
                              double beta) {
  if (!(beta >= 0.0)) throw InvalidKinematics("particle rapidity must be non-negative");
  const double a = boost.alpha;
  const double cos_ef = boost.axis.dot(kin.direction);
  const Vec3 cross = boost.axis.cross(kin.direction);

  const double ch = std::cosh(0.5 * a) * std::cosh(0.5 * beta);
  const double sh = std::sinh(0.5 * a) * std::sinh(0.5 * beta);
  const double denom = std::sqrt(0.5 + 0.5 * std::cosh(a) * std::cosh(beta) +
                                 0.5 * std::sinh(a) * std::sinh(beta) * cos_ef);

  WignerRotation w;
  w.cos_half = (ch + sh * cos_ef) / denom;
  const double cross_norm = cross.norm();
  const double sin_half = sh * cross_norm / denom;
  if (sin_half > 0.0) {
    w.sin_half = sin_half;
    w.axis = cross / cross_norm;
  }
  normalise(w);
  return w;
}

WignerRotation wigner_1d(const BoostParams& boost, double p, double mass) {
  check_mass(mass);
  const double a = z_rapidity(boost);
  const double beta = std::asinh(p / mass);
  const double cosh_beta = std::sqrt(1.0 + (p / mass) * (p / mass));
  const double denom = std::sqrt(0.5 + 0.5 * std::cosh(a) * cosh_beta);

  WignerRotation w;
  w.cos_half = std::cosh(0.5 * a) * std::cosh(0.5 * beta) / denom;
  w.sin_half = std::sinh(0.5 * a) * std::sinh(0.5 * beta) / denom;
  normalise(w);
  return w;
}

Matrix2c wigner_3d_zboost(const BoostParams& boost, const Vec3& p, double mass) {
  check_mass(mass);
  const double a = z_rapidity(boost);
  const double p0 = std::sqrt(p.squaredNorm() + mass * mass);
  const double ch = std::cosh(0.5 * a);
  const double sh = std::sinh(0.5 * a);
  const double lhs = p0 + mass;
  const double rhs = p0 * std::cosh(a) + p.z() * std::sinh(a) + mass;

  const Matrix2c spin = -p.x() * pauli::y() + p.y() * pauli::x();
  const Matrix2c d = (lhs * ch + p.z() * sh) * pauli::identity() - Complex(0.0, sh) * spin;
  return d / std::sqrt(lhs * rhs);
}

}  // namespace wigcoh
