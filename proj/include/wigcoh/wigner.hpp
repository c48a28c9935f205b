#pragma once

// SU(2) representation of the Wigner rotation W(Lambda, p) induced by a pure
// observer boost on a sharp-momentum spin-1/2 state.

#include "wigcoh/core.hpp"

namespace wigcoh {

// D = cos(phi/2) 1 + i sin(phi/2) (n . sigma).
struct WignerRotation {
  double cos_half = 1.0;
  double sin_half = 0.0;
  Vec3 axis = Vec3::UnitY();

  Matrix2c matrix() const;
  double half_angle() const { return std::atan2(sin_half, cos_half); }
};

// Boost along boost.axis with rapidity boost.alpha, particle moving along
// kin.direction with rapidity beta >= 0. sin_half >= 0; the axis is e x f
// normalised, or y when e and f are collinear.
WignerRotation wigner_general(const BoostParams& boost, const ParticleKinematics& kin,
                              double beta);

// Boost along z, momentum p (signed) along x. Axis is always y; the sign of
// p is carried by sin_half.
WignerRotation wigner_1d(const BoostParams& boost, double p, double mass);

// Closed form of D(W) for a z-boost acting on an arbitrary 3-momentum.
Matrix2c wigner_3d_zboost(const BoostParams& boost, const Vec3& p, double mass);

}  // namespace wigcoh

namespace wigcoh {

// Signed rapidity along +z. Throws InvalidKinematics for boosts off the z axis.
double z_rapidity(const BoostParams& boost);

}  // namespace wigcoh
