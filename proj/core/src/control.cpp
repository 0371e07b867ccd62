#include "entctl/control.hpp"

#include <algorithm>
#include <stdexcept>

namespace entctl {

double error_signal(double n_est, double target) { return target - n_est; }

double pi_update(PiControllerState& ctrl, double e, double dt) {
  const double candidate = ctrl.dz0 + ctrl.kp * e + ctrl.ki * (ctrl.integral + e * dt);
  if (candidate >= ctrl.dz_min && candidate <= ctrl.dz_max) {
    ctrl.integral += e * dt;
    ctrl.saturated = false;
    ctrl.last_output = candidate;
  } else {
    // frozen integral while clamped
    ctrl.saturated = true;
    ctrl.last_output = std::clamp(candidate, ctrl.dz_min, ctrl.dz_max);
  }
  return ctrl.last_output;
}

GainSearchResult gain_grid_search(std::span<const double> grid_kp,
                                  std::span<const double> grid_ki,
                                  const std::function<double(double, double)>& objective) {
  if (grid_kp.empty() || grid_ki.empty())
    throw std::invalid_argument("gain_grid_search: empty grid");
  GainSearchResult best;
  bool have = false;
  for (double kp : grid_kp) {
    for (double ki : grid_ki) {
      const double mse = objective(kp, ki);
      const bool better =
          !have || mse < best.mse ||
          (mse == best.mse && (kp < best.kp || (kp == best.kp && ki < best.ki)));
      if (better) {
        best = {kp, ki, mse};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace entctl
