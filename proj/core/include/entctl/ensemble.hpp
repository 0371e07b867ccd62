#pragma once

#include <cstdint>
#include <vector>

#include "entctl/config.hpp"
#include "entctl/linalg.hpp"
#include "entctl/trajectory.hpp"

namespace entctl {

// Per-time-step ensemble statistics plus the averaged density matrix series.
// Results are bit-identical for a given (cfg, n_traj, master_seed) regardless
// of how many worker threads ran the trajectories.
struct EnsembleStats {
  std::vector<double> times;  // sampled grid, ms
  std::vector<double> mean_negativity, sem_negativity;
  std::vector<double> mean_zz, sem_zz;
  std::vector<double> mean_dz;
  std::vector<ComplexMatrix> mean_rho;  // ensemble average of |psi><psi| per sample

  // per-trajectory series, row-major [trajectory][sample]; kept for window
  // statistics computed after the run
  std::vector<double> negativity_series;

  int n_traj = 0;
  std::uint64_t master_seed = 0;
  long total_jumps = 0;
  long large_p_warnings = 0;
  ScenarioConfig cfg;

  double neg_at(int traj, int sample) const {
    return negativity_series[static_cast<std::size_t>(traj) * times.size() + sample];
  }
};

// threads = 0 picks a hardware-based default.
EnsembleStats run_ensemble(const ScenarioConfig& cfg, int threads = 0);
EnsembleStats run_ensemble(ScenarioConfig cfg, int n_traj, std::uint64_t master_seed,
                           int threads = 0);

struct WindowAverage {
  double n_bar = 0.0;
  double sem = 0.0;
};

// Mean of the trajectory-averaged negativity over samples with
// t_start <= t <= t_end; sem from the spread of per-trajectory window means.
WindowAverage time_averaged_negativity(const EnsembleStats& stats, double t_start,
                                       double t_end);

// Direct fixed-step RK4 integration of the master equation
//   drho/dt = -i[H, rho] + sum gamma (L rho L^dag - 1/2 {L^dag L, rho})
// at the scenario's static fields. Requires sigma = 0 and feedback off.
struct LindbladTrace {
  std::vector<double> times;
  std::vector<ComplexMatrix> rho;
  std::vector<double> zz;  // Tr(rho sigma_z sigma_z)
};
LindbladTrace lindblad_reference(const ScenarioConfig& cfg, double dt_ref = 1e-3);

// Same integrator with explicit operators and initial state.
LindbladTrace integrate_lindblad(const ComplexMatrix& h,
                                 const std::vector<JumpChannel>& channels,
                                 const ComplexMatrix& rho0, double t_total,
                                 double sample_dt, double dt_ref);

}  // namespace entctl
