#pragma once

#include <functional>
#include <span>

namespace entctl {

// PI controller with conditional-integration anti-windup acting on D_z.
struct PiControllerState {
  double kp = 0.5;
  double ki = 0.1;
  double target = 0.4;   // N_target
  double dz0 = 1.0;      // baseline D_z
  double dz_min = 0.0;
  double dz_max = 2.0;
  double integral = 0.0;  // accumulated integral of e dt
  double last_output = 1.0;
  bool saturated = false;
};

// e = target - n_est
double error_signal(double n_est, double target);

// D_z = dz0 + kp*e + ki*(integral + e*dt), clamped to [dz_min, dz_max].
// The integral only accumulates while the output is unclamped (anti-windup).
// Returns the emitted D_z; updates integral/last_output/saturated in place.
double pi_update(PiControllerState& ctrl, double e, double dt);

struct GainSearchResult {
  double kp = 0.0;
  double ki = 0.0;
  double mse = 0.0;
};

// Exhaustive grid search minimizing objective(kp, ki); ties broken by smaller
// kp, then smaller ki. Objective failures propagate.
GainSearchResult gain_grid_search(std::span<const double> grid_kp,
                                  std::span<const double> grid_ki,
                                  const std::function<double(double, double)>& objective);

}  // namespace entctl
