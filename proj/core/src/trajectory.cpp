#include "entctl/trajectory.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "entctl/entanglement.hpp"

namespace entctl {

std::vector<JumpChannel> make_jump_channels(const DecoherenceRates& rates) {
  if (rates.gamma1 < 0.0 || rates.gamma2 < 0.0)
    throw std::invalid_argument("make_jump_channels: rates must be >= 0");
  std::vector<JumpChannel> ch;
  ch.reserve(4);
  ch.push_back({pauli_op(PauliAxis::Minus, Qubit::A), rates.gamma1});
  ch.push_back({pauli_op(PauliAxis::Minus, Qubit::B), rates.gamma1});
  ch.push_back({pauli_op(PauliAxis::Z, Qubit::A), rates.gamma2});
  ch.push_back({pauli_op(PauliAxis::Z, Qubit::B), rates.gamma2});
  return ch;
}

namespace {
ComplexMatrix decay_operator(std::span<const JumpChannel> channels) {
  ComplexMatrix k(4);
  for (const JumpChannel& ch : channels) k += ch.rate * (ch.op.adjoint() * ch.op);
  return k;
}
}  // namespace

ComplexMatrix effective_hamiltonian(const ComplexMatrix& h,
                                    std::span<const JumpChannel> channels) {
  if (h.dim() != 4) throw std::invalid_argument("effective_hamiltonian: h must be 4x4");
  return h - cplx(0.0, 0.5) * decay_operator(channels);
}

DeterministicStep deterministic_step(const StateVector& psi, const ComplexMatrix& h_eff,
                                     double dt) {
  const StateVector hp = apply(h_eff, psi);
  DeterministicStep out;
  for (int i = 0; i < 4; ++i) out.psi_unnorm.amp[i] = psi.amp[i] - cplx(0.0, dt) * hp.amp[i];
  out.norm_sq = out.psi_unnorm.norm_sq();
  return out;
}

StateVector rk4_step(const StateVector& psi, const ComplexMatrix& h_eff, double dt) {
  auto deriv = [&](const StateVector& v) {
    StateVector hv = apply(h_eff, v);
    for (cplx& a : hv.amp) a *= cplx(0.0, -1.0);  // -i H_eff v
    return hv;
  };
  const StateVector k1 = deriv(psi);
  StateVector tmp;
  for (int i = 0; i < 4; ++i) tmp.amp[i] = psi.amp[i] + 0.5 * dt * k1.amp[i];
  const StateVector k2 = deriv(tmp);
  for (int i = 0; i < 4; ++i) tmp.amp[i] = psi.amp[i] + 0.5 * dt * k2.amp[i];
  const StateVector k3 = deriv(tmp);
  for (int i = 0; i < 4; ++i) tmp.amp[i] = psi.amp[i] + dt * k3.amp[i];
  const StateVector k4 = deriv(tmp);
  StateVector out;
  for (int i = 0; i < 4; ++i)
    out.amp[i] =
        psi.amp[i] + dt / 6.0 * (k1.amp[i] + 2.0 * k2.amp[i] + 2.0 * k3.amp[i] + k4.amp[i]);
  return out;
}

std::vector<double> jump_probabilities(const StateVector& psi,
                                       std::span<const JumpChannel> channels, double dt) {
  std::vector<double> p;
  p.reserve(channels.size());
  for (const JumpChannel& ch : channels) {
    const StateVector lv = apply(ch.op, psi);
    p.push_back(ch.rate * dt * lv.norm_sq());  // <psi|L^dag L|psi> = ||L psi||^2
  }
  return p;
}

StateVector apply_jump(const StateVector& psi, const JumpChannel& channel) {
  StateVector out = apply(channel.op, psi);
  if (out.norm_sq() < 1e-280)
    throw std::runtime_error("apply_jump: channel annihilates the state");
  out.normalize();
  return out;
}

StepContext make_step_context(const ScenarioConfig& cfg) {
  StepContext ctx;
  ctx.j = couplings(cfg.model);
  ctx.h_exchange = 0.25 * ctx.j.jx * kron(sigma_x(), sigma_x());
  ctx.h_exchange += 0.25 * ctx.j.jy * kron(sigma_y(), sigma_y());
  ctx.h_exchange += 0.25 * ctx.j.jz * kron(sigma_z(), sigma_z());
  ctx.dm_op = kron(sigma_x(), sigma_y()) - kron(sigma_y(), sigma_x());
  ctx.channels = make_jump_channels({cfg.gamma1, cfg.gamma2});
  for (const JumpChannel& ch : ctx.channels) ctx.ldl.push_back(ch.op.adjoint() * ch.op);
  ctx.decay_op = decay_operator(ctx.channels);
  ctx.b0 = cfg.b0;
  ctx.dt = cfg.dt;
  ctx.feedback = cfg.feedback;
  ctx.cal_slope = cfg.cal_slope;
  ctx.cal_intercept = cfg.cal_intercept;
  ctx.integrator = cfg.integrator;
  return ctx;
}

TrajectoryState make_trajectory(const ScenarioConfig& cfg, std::uint64_t index) {
  TrajectoryState s;
  s.psi = initial_state({cfg.alpha});
  s.t = 0.0;
  s.ou_a = ou_init(cfg.tau_c, cfg.sigma, derive_seed(cfg.master_seed, index, 0));
  s.ou_b = ou_init(cfg.tau_c, cfg.sigma, derive_seed(cfg.master_seed, index, 1));
  s.jump_stream = Xoshiro256ss(derive_seed(cfg.master_seed, index, 2));
  s.controller = PiControllerState{cfg.kp, cfg.ki, cfg.target, cfg.dz0,
                                   cfg.dz_min, cfg.dz_max, 0.0, cfg.dz0, false};
  s.dz = cfg.dz0;
  return s;
}

void step_closed_loop(TrajectoryState& s, const StepContext& ctx) {
  // 1-2: proxy measurement and PI actuation on the pre-step state
  if (ctx.feedback) {
    const double m = zz_correlation(s.psi);
    const CalibrationFit fit{ctx.cal_slope, ctx.cal_intercept, 0.0, 0};
    const double n_est = estimate_negativity(m, fit);
    const double e = error_signal(n_est, s.controller.target);
    s.dz = pi_update(s.controller, e, ctx.dt);
  }

  // 3: advance the noise, then rebuild H with the new D_z and current fields
  s.ou_a = ou_step(std::move(s.ou_a), ctx.dt);
  s.ou_b = ou_step(std::move(s.ou_b), ctx.dt);
  const double field_a = ctx.b0 + s.ou_a.value;
  const double field_b = ctx.b0 + s.ou_b.value;

  ComplexMatrix h = ctx.h_exchange;
  h += cplx(0.25 * s.dz) * ctx.dm_op;
  // z fields are diagonal: diag(+,+,-,-)/2 * B_a + diag(+,-,+,-)/2 * B_b
  h(0, 0) += 0.5 * (field_a + field_b);
  h(1, 1) += 0.5 * (field_a - field_b);
  h(2, 2) += 0.5 * (-field_a + field_b);
  h(3, 3) += 0.5 * (-field_a - field_b);
  const ComplexMatrix h_eff = h - cplx(0.0, 0.5) * ctx.decay_op;

  // 4: one jump or the deterministic step, then renormalize
  std::array<double, 8> p{};
  const std::size_t nch = ctx.channels.size();
  double total = 0.0;
  for (std::size_t k = 0; k < nch; ++k) {
    // <psi|L^dag L|psi> via the precomputed quadratic form; no allocation
    const StateVector lv = apply(ctx.ldl[k], s.psi);
    p[k] = ctx.channels[k].rate * ctx.dt * inner(s.psi, lv).real();
    total += p[k];
  }
  if (total > 0.1) ++s.large_p_warnings;

  const double r = s.jump_stream.uniform01();
  if (r < total) {
    double cum = 0.0;
    std::size_t k = 0;
    for (; k < nch; ++k) {
      cum += p[k];
      if (cum >= r) break;
    }
    if (k == nch) k = nch - 1;  // guard against roundoff at the boundary
    s.psi = apply_jump(s.psi, ctx.channels[k]);
    ++s.jumps;
  } else {
    if (ctx.integrator == Integrator::Rk4) {
      s.psi = rk4_step(s.psi, h_eff, ctx.dt);
    } else {
      s.psi = deterministic_step(s.psi, h_eff, ctx.dt).psi_unnorm;
    }
    s.psi.normalize();
  }

  ++s.steps;
  s.t = static_cast<double>(s.steps) * ctx.dt;
}

TrajectoryState step_closed_loop(TrajectoryState s, const ScenarioConfig& cfg) {
  const StepContext ctx = make_step_context(cfg);
  step_closed_loop(s, ctx);
  return s;
}

}  // namespace entctl
