#include "entctl/metrology.hpp"

#include <cmath>
#include <stdexcept>

namespace entctl {

SteadyStateEstimate steady_state_density(const EnsembleStats& stats, double window_start,
                                         double window_end) {
  const int nsamp = static_cast<int>(stats.times.size());
  ComplexMatrix sum(4);
  long count = 0;
  for (int si = 0; si < nsamp; ++si) {
    if (stats.times[si] >= window_start - 1e-12 && stats.times[si] <= window_end + 1e-12) {
      sum += stats.mean_rho[si];
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("steady_state_density: empty window");
  sum *= cplx(1.0 / static_cast<double>(count));

  SteadyStateEstimate out;
  out.rho_ss = sum;
  out.window_start = window_start;
  out.window_end = window_end;
  out.b0 = stats.cfg.b0;
  out.sample_count = count * static_cast<long>(stats.n_traj);
  out.master_seed = stats.master_seed;
  out.n_traj = stats.n_traj;
  return out;
}

QfiResult qfi_finite_difference(const SteadyStateEstimate& rho_minus,
                                const SteadyStateEstimate& rho_plus, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("qfi: delta must be > 0");
  if (rho_minus.master_seed != rho_plus.master_seed)
    throw std::invalid_argument("qfi: estimates must share the master seed "
                                "(common random numbers)");
  if (rho_minus.n_traj != rho_plus.n_traj)
    throw std::invalid_argument("qfi: estimates must share the trajectory count");
  if (rho_minus.window_start != rho_plus.window_start ||
      rho_minus.window_end != rho_plus.window_end)
    throw std::invalid_argument("qfi: estimates must share the averaging window");
  if (std::abs((rho_plus.b0 - rho_minus.b0) - 2.0 * delta) > 1e-12)
    throw std::invalid_argument("qfi: estimates must be evaluated at b0 -/+ delta");

  ComplexMatrix drho = rho_plus.rho_ss;
  drho -= rho_minus.rho_ss;
  drho *= cplx(1.0 / (2.0 * delta));

  ComplexMatrix central = rho_plus.rho_ss;
  central += rho_minus.rho_ss;
  central *= cplx(0.5);
  // symmetrize away accumulation roundoff before eigensolving
  ComplexMatrix sym(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) sym(i, j) = 0.5 * (central(i, j) + std::conj(central(j, i)));

  const HermitianEigen eig = hermitian_eigen(sym, 1e-10);
  double f = 0.0;
  for (int i = 0; i < 4; ++i) {
    const StateVector vi = eig.vector(i);
    const StateVector dv = apply(drho, vi);
    for (int j = 0; j < 4; ++j) {
      const double denom = eig.values[i] + eig.values[j];
      if (denom < 1e-10) continue;
      const double num = eig.values[i] - eig.values[j];
      const cplx elem = inner(eig.vector(j), dv);  // <j| drho |i>
      f += 2.0 * num * num / denom * std::norm(elem);
    }
  }

  QfiResult out;
  out.f_q = f;
  out.delta = delta;
  out.b0 = 0.5 * (rho_plus.b0 + rho_minus.b0);
  return out;
}

double sensitivity(double f_q, long n_measurements) {
  if (!(f_q > 0.0)) throw std::invalid_argument("sensitivity: F_Q must be > 0");
  if (n_measurements < 1) throw std::invalid_argument("sensitivity: n must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(n_measurements) * f_q);
}

double scaling_prediction(double n_bar) { return std::sqrt(1.0 + 2.0 * n_bar); }

}  // namespace entctl
