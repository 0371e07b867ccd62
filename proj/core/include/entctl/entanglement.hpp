#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "entctl/linalg.hpp"

namespace entctl {

// N(rho) = (1/2)(||rho^{T_a}||_1 - 1), clamped to [0, 0.5].
// Throws unless rho is a valid density matrix (Hermitian within 1e-12,
// trace 1 within 1e-10, eigenvalues >= -1e-10).
double negativity(const ComplexMatrix& rho);

// Pure-state fast path via the Schmidt form: N = |a00 a11 - a01 a10|.
// Agrees with negativity(|psi><psi|) to 1e-10.
double negativity_pure(const StateVector& psi);

// <sigma_z sigma_z> of a pure state; real, in [-1, 1].
double zz_correlation(const StateVector& psi);

// Linear map from the |<sigma_z sigma_z>| proxy to an entanglement estimate.
struct CalibrationFit {
  double slope = 0.83;
  double intercept = -0.12;
  double pearson_r = 0.0;
  std::size_t sample_count = 0;
};

// Default proxy map N_est = 0.83 |m| - 0.12 used by the feedback protocol.
CalibrationFit default_calibration();

// slope*|m| + intercept, clamped to the physical range [0, 0.5].
double estimate_negativity(double m, const CalibrationFit& fit);

// Ordinary least squares of n against |m| over (m, n) samples; pearson_r is
// reported for the (|m|, n) pairs. Throws for < 100 samples or a dataset
// degenerate in |m|.
CalibrationFit fit_calibration(std::span<const std::pair<double, double>> samples);

}  // namespace entctl
