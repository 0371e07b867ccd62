#include "entctl/calibration.hpp"

#include "entctl/trajectory.hpp"

namespace entctl {

std::vector<std::pair<double, double>> calibration_dataset(ModelKind model,
                                                           std::span<const double> alphas,
                                                           double t_total, double dt,
                                                           int sample_stride) {
  ScenarioConfig cfg;
  cfg.model = model;
  cfg.sigma = 0.0;
  cfg.gamma1 = 0.0;
  cfg.gamma2 = 0.0;
  cfg.feedback = false;
  cfg.t_total = t_total;
  cfg.dt = dt;
  cfg.sample_stride = sample_stride;
  cfg.n_traj = 1;

  std::vector<std::pair<double, double>> samples;
  for (double alpha : alphas) {
    cfg.alpha = alpha;
    validate(cfg);
    const StepContext ctx = make_step_context(cfg);
    TrajectoryState s = make_trajectory(cfg, 0);
    const int steps = cfg.steps();
    for (int step = 0;; ++step) {
      if (step % sample_stride == 0)
        samples.emplace_back(zz_correlation(s.psi), negativity_pure(s.psi));
      if (step == steps) break;
      step_closed_loop(s, ctx);
    }
  }
  return samples;
}

std::vector<double> default_calibration_alphas() {
  std::vector<double> alphas;
  for (double a = 0.25; a <= 3.0 + 1e-9; a += 0.25) alphas.push_back(a);
  return alphas;
}

}  // namespace entctl
