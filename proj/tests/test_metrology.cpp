#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "entctl/ensemble.hpp"
#include "entctl/metrology.hpp"
#include "entctl/model.hpp"

using namespace entctl;

namespace {

SteadyStateEstimate estimate_from(const ComplexMatrix& rho, double b0,
                                  std::uint64_t seed = 1, int n_traj = 100) {
  SteadyStateEstimate e;
  e.rho_ss = rho;
  e.window_start = 100.0;
  e.window_end = 150.0;
  e.b0 = b0;
  e.sample_count = 1;
  e.master_seed = seed;
  e.n_traj = n_traj;
  return e;
}

StateVector basis(int i) {
  StateVector v;
  v.amp[i] = 1;
  return v;
}

// phase-imprinting family psi(B) = exp(-i B G t) psi0 with G = diag(1,0,0,-1)
StateVector phase_family(double b, double t) {
  const StateVector psi0 = initial_state({1.0});
  const double g[4] = {1.0, 0.0, 0.0, -1.0};
  StateVector out;
  for (int i = 0; i < 4; ++i)
    out.amp[i] = psi0.amp[i] * std::exp(cplx(0.0, -b * g[i] * t));
  return out;
}

}  // namespace

TEST_CASE("steady state from trivial ensembles") {
  // single trajectory, single time, |00>
  EnsembleStats stats;
  stats.times = {120.0};
  stats.mean_rho = {outer(basis(0))};
  stats.n_traj = 1;
  stats.master_seed = 5;
  stats.cfg.b0 = 1.0;
  const SteadyStateEstimate e = steady_state_density(stats, 100.0, 150.0);
  CHECK(std::abs(e.rho_ss(0, 0) - cplx(1)) < 1e-15);
  CHECK(e.sample_count == 1);
  CHECK(e.b0 == 1.0);

  // uniform mixture of |00> and |11>
  ComplexMatrix mix = outer(basis(0));
  mix += outer(basis(3));
  mix *= cplx(0.5);
  EnsembleStats stats2;
  stats2.times = {110.0, 140.0};
  stats2.mean_rho = {mix, mix};
  stats2.n_traj = 2;
  const SteadyStateEstimate e2 = steady_state_density(stats2, 100.0, 150.0);
  CHECK(e2.rho_ss(0, 0).real() == doctest::Approx(0.5));
  CHECK(e2.rho_ss(3, 3).real() == doctest::Approx(0.5));
  CHECK(e2.rho_ss(1, 1).real() == doctest::Approx(0.0));

  CHECK_THROWS(steady_state_density(stats, 200.0, 300.0));
}

TEST_CASE("time averaging over unitary oscillations loses purity") {
  ScenarioConfig cfg;
  cfg.sigma = 0.0;
  cfg.gamma1 = 0.0;
  cfg.gamma2 = 0.0;
  cfg.feedback = false;
  cfg.n_traj = 1;
  const EnsembleStats stats = run_ensemble(cfg);
  const SteadyStateEstimate e = steady_state_density(stats, 100.0, 150.0);
  const double purity = (e.rho_ss * e.rho_ss).trace().real();
  CHECK(purity < 0.999);
  CHECK(std::abs(e.rho_ss.trace().real() - 1.0) < 1e-9);
}

TEST_CASE("QFI vanishes for a b0-independent family") {
  ComplexMatrix rho = outer(initial_state({1.0}));
  const QfiResult q =
      qfi_finite_difference(estimate_from(rho, 0.99), estimate_from(rho, 1.01), 0.01);
  CHECK(q.f_q == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q.b0 == doctest::Approx(1.0));
}

TEST_CASE("QFI matches the pure-state identity 4 t^2 Var(G)") {
  // Var(G) = 1/2 for the alpha = 1 state, so the exact value is 2 t^2
  const double t = 1.0, b0 = 1.0;
  const double f_exact = 2.0 * t * t;
  double prev_err = 1e9;
  for (double delta : {0.01, 0.005}) {
    const ComplexMatrix rm = outer(phase_family(b0 - delta, t));
    const ComplexMatrix rp = outer(phase_family(b0 + delta, t));
    const QfiResult q =
        qfi_finite_difference(estimate_from(rm, b0 - delta), estimate_from(rp, b0 + delta),
                              delta);
    const double rel_err = std::abs(q.f_q - f_exact) / f_exact;
    CHECK(rel_err < 1e-3);
    CHECK(rel_err < prev_err);  // halving delta improves the estimate
    prev_err = rel_err;
  }
}

TEST_CASE("QFI is non-negative and zero exactly when the estimates agree") {
  const ComplexMatrix rho = outer(phase_family(1.0, 1.0));
  const QfiResult same =
      qfi_finite_difference(estimate_from(rho, 0.99), estimate_from(rho, 1.01), 0.01);
  CHECK(same.f_q == 0.0);

  const ComplexMatrix rm = outer(phase_family(0.99, 1.0));
  const ComplexMatrix rp = outer(phase_family(1.01, 1.0));
  const QfiResult diff =
      qfi_finite_difference(estimate_from(rm, 0.99), estimate_from(rp, 1.01), 0.01);
  CHECK(diff.f_q > 0.0);
}

TEST_CASE("common-random-numbers requirements are enforced") {
  const ComplexMatrix rm = outer(phase_family(0.99, 1.0));
  const ComplexMatrix rp = outer(phase_family(1.01, 1.0));

  // mismatched master seeds
  CHECK_THROWS(qfi_finite_difference(estimate_from(rm, 0.99, 1), estimate_from(rp, 1.01, 2),
                                     0.01));
  // mismatched windows
  SteadyStateEstimate bad = estimate_from(rp, 1.01);
  bad.window_start = 80.0;
  CHECK_THROWS(qfi_finite_difference(estimate_from(rm, 0.99), bad, 0.01));
  // mismatched trajectory counts
  CHECK_THROWS(qfi_finite_difference(estimate_from(rm, 0.99, 1, 100),
                                     estimate_from(rp, 1.01, 1, 200), 0.01));
  // b0 split inconsistent with delta
  CHECK_THROWS(qfi_finite_difference(estimate_from(rm, 0.99), estimate_from(rp, 1.02),
                                     0.01));
  // bad delta
  CHECK_THROWS(qfi_finite_difference(estimate_from(rm, 0.99), estimate_from(rp, 1.01),
                                     0.0));
}

TEST_CASE("sensitivity arithmetic") {
  CHECK(sensitivity(1.0, 1) == doctest::Approx(1.0));
  CHECK(sensitivity(6.2, 1) == doctest::Approx(1.0 / std::sqrt(6.2)).epsilon(1e-12));
  // improvement factor over the unit-F reference
  CHECK(1.0 / sensitivity(6.2, 1) == doctest::Approx(std::sqrt(6.2)).epsilon(1e-12));
  CHECK(sensitivity(2.5, 4) == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-12));
  CHECK_THROWS(sensitivity(0.0, 1));
  CHECK_THROWS(sensitivity(1.0, 0));
}

TEST_CASE("scaling prediction") {
  CHECK(scaling_prediction(0.0) == doctest::Approx(1.0));
  CHECK(scaling_prediction(0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(scaling_prediction(0.42) == doctest::Approx(std::sqrt(1.84)).epsilon(1e-12));
}

TEST_CASE("steady-state QFI wiring end to end on a tiny ensemble") {
  ScenarioConfig base;
  base.t_total = 40.0;
  base.n_traj = 24;
  base.sigma = 0.0;
  base.feedback = false;
  const double delta = 0.01;
  ScenarioConfig minus = base, plus = base;
  minus.b0 = base.b0 - delta;
  plus.b0 = base.b0 + delta;
  const EnsembleStats sm = run_ensemble(minus);
  const EnsembleStats sp = run_ensemble(plus);
  const SteadyStateEstimate rm = steady_state_density(sm, 20.0, 40.0);
  const SteadyStateEstimate rp = steady_state_density(sp, 20.0, 40.0);
  const QfiResult q = qfi_finite_difference(rm, rp, delta);
  CHECK(q.f_q >= 0.0);
  CHECK(q.b0 == doctest::Approx(base.b0));
  CHECK(q.delta == delta);
}
