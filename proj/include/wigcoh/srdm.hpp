#pragma once

// Spin-reduced density matrix seen by a boosted observer, obtained by tracing
// the momentum degree of freedom out of a Gaussian packet whose basis states
// have each been Wigner-rotated.
//
// Geometry: the observer moves along z; the 1D packet moves along x and starts
// in spin (|0> + |1>)/sqrt(2); the 3D packet is isotropic, zero-centred and
// starts in |0>. The sqrt((Lambda p)^0 / p^0) factor cancels in the trace and
// is never computed.

#include "wigcoh/core.hpp"
#include "wigcoh/quadrature.hpp"

namespace wigcoh {

// Per-momentum coefficients of the 1D SRDM integrand. a_sq + b_sq == 2 and
// ab^2 == a_sq * b_sq hold exactly. `tilt` = a_sq - 1 and
// `offdiag_deficit` = 1 - ab are evaluated without cancellation.
struct SrdmIntegrandTerms1D {
  double a_sq = 1.0;
  double b_sq = 1.0;
  double ab = 1.0;
  double tilt = 0.0;
  double offdiag_deficit = 0.0;
};

SrdmIntegrandTerms1D integrand_terms_1d(double p, const BoostParams& boost, double mass);

// Coefficients of the 3D SRDM integrand for a z-boost: diag(M, N) / (A B),
// with M + N == A B.
struct SrdmIntegrandTerms3D {
  double energy_factor = 0.0;   // A = p0 + m
  double boosted_factor = 0.0;  // B = p0 cosh(alpha) + pz sinh(alpha) + m
  double spin_up = 0.0;         // M
  double spin_down = 0.0;       // N
};

SrdmIntegrandTerms3D integrand_terms_3d(double pz, double p_perp_sq, const BoostParams& boost,
                                        double mass);

struct SrdmResult {
  QubitDensity rho;
  // 1 - C_F (Frobenius coherence), computed without subtracting from 1.
  double coherence_deficit = 0.0;
  // 1 - 2|rho12|.
  double offdiag_deficit = 0.0;
  // Largest absolute change of any entry under the last refinement.
  double error_estimate = 0.0;
};

// Throws NumericFailure when the scheme cannot reach quad.rel_tol.
SrdmResult srdm_boosted_1d(const GaussianPacket& packet, const BoostParams& boost, double mass,
                           const QuadratureConfig& quad = {});

SrdmResult srdm_boosted_3d(double sigma, const BoostParams& boost, double mass,
                           const QuadratureConfig& quad = {});

// Closed forms valid for sigma/m << 1. Not range-checked.
QubitDensity srdm_analytic_1d(double alpha, double sigma, double mass);
// 1 - 2 rho12 of srdm_analytic_1d.
double analytic_offdiag_deficit_1d(double alpha, double sigma, double mass);
QubitDensity srdm_narrow_3d(double alpha, double sigma, double mass);
// (sigma / (2m) * tanh(alpha/2))^2, the narrow-packet value of 1 - n_z and 1 - C_F.
double coherence_deficit_narrow(double alpha, double sigma, double mass);

}  // namespace wigcoh
