#pragma once

// Coherence quantifiers. l1, relative entropy and skew information depend on
// the computational basis; the Frobenius measure is unitarily invariant.

#include <span>

#include "wigcoh/core.hpp"

namespace wigcoh {

// Sum of off-diagonal magnitudes, 2|rho12| for a qubit.
double coherence_l1(const QubitDensity& rho);

// S(diag rho) - S(rho) in nats.
double coherence_rel_entropy(const QubitDensity& rho);

// Wigner-Yanase skew information with respect to sigma_z, via the Bloch form
// (1 - sqrt(1 - |n|^2)) (n1^2 + n2^2).
double skew_information(const QubitDensity& rho);

// sqrt(d/(d-1) * sum (lambda_j - 1/d)^2) for a spectrum of any dimension d >= 2.
// Eigenvalues within 1e-10 below zero are clamped; the spectrum must sum to 1
// within 1e-8 or InvalidState is thrown.
double coherence_frobenius(std::span<const double> eigenvalues);
double coherence_frobenius(const QubitDensity& rho);

// 1 - C_F of a diagonal qubit state from its n_z deficit delta = 1 - n_z.
// Returned as-is so that deficits far below machine epsilon survive.
double frobenius_deficit(double nz_deficit);

// Shannon entropy in nats of a probability vector, with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

}  // namespace wigcoh
