#pragma once

#include <cstdint>

#include "entctl/ensemble.hpp"
#include "entctl/linalg.hpp"

namespace entctl {

// Time-and-ensemble averaged density matrix over a late-time window.
struct SteadyStateEstimate {
  ComplexMatrix rho_ss;
  double window_start = 0.0;
  double window_end = 0.0;
  double b0 = 0.0;
  long sample_count = 0;  // trajectories x window samples
  std::uint64_t master_seed = 0;
  int n_traj = 0;
};

// rho_ss = average of |psi><psi| over all trajectories and all sampled times
// inside [window_start, window_end]. Throws on an empty window.
SteadyStateEstimate steady_state_density(const EnsembleStats& stats, double window_start,
                                         double window_end);

struct QfiResult {
  double f_q = 0.0;
  double delta = 0.0;
  double b0 = 0.0;
};

// F_Q = 2 sum_{ij} (l_i - l_j)^2 / (l_i + l_j) |<i| drho |j>|^2 with
// drho ~ (rho_plus - rho_minus)/(2 delta) and the eigenbasis of the central
// estimate (rho_plus + rho_minus)/2; terms with l_i + l_j < 1e-10 are skipped.
// The two estimates must come from common-random-number runs: same master
// seed, same trajectory count, same window, b0 split by exactly 2*delta.
QfiResult qfi_finite_difference(const SteadyStateEstimate& rho_minus,
                                const SteadyStateEstimate& rho_plus, double delta);

// Minimum detectable field change: 1/sqrt(n * F_Q). Throws for f_q <= 0.
double sensitivity(double f_q, long n_measurements);

// sqrt(1 + 2 * n_bar): predicted sensitivity-improvement factor at
// time-averaged negativity n_bar.
double scaling_prediction(double n_bar);

}  // namespace entctl
