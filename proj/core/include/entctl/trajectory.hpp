#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "entctl/config.hpp"
#include "entctl/control.hpp"
#include "entctl/linalg.hpp"
#include "entctl/model.hpp"
#include "entctl/noise.hpp"
#include "entctl/rng.hpp"

namespace entctl {

struct DecoherenceRates {
  double gamma1 = 0.01;  // amplitude damping, 1/ms
  double gamma2 = 0.01;  // dephasing, 1/ms
};

struct JumpChannel {
  ComplexMatrix op;   // sigma-_a, sigma-_b, sigma_z_a, sigma_z_b
  double rate = 0.0;
};

// The four decoherence channels: damping on a and b, dephasing on a and b.
std::vector<JumpChannel> make_jump_channels(const DecoherenceRates& rates);

// H_eff = H - (i/2) sum_j rate_j L_j^dagger L_j
ComplexMatrix effective_hamiltonian(const ComplexMatrix& h,
                                    std::span<const JumpChannel> channels);

struct DeterministicStep {
  StateVector psi_unnorm;  // (1 - i H_eff dt) |psi>
  double norm_sq;
};
DeterministicStep deterministic_step(const StateVector& psi, const ComplexMatrix& h_eff,
                                     double dt);

// Classic RK4 on d|psi>/dt = -i H_eff |psi> with coefficients frozen over dt.
StateVector rk4_step(const StateVector& psi, const ComplexMatrix& h_eff, double dt);

// p_j = rate_j * dt * <psi|L_j^dagger L_j|psi>
std::vector<double> jump_probabilities(const StateVector& psi,
                                       std::span<const JumpChannel> channels, double dt);

// L|psi> renormalized; throws if L|psi> vanishes (such a channel must have
// had probability 0 -- reaching it signals a logic bug upstream).
StateVector apply_jump(const StateVector& psi, const JumpChannel& channel);

// Everything one trajectory evolves: state, clock, its two OU processes,
// controller, current D_z, and the jump-decision stream.
struct TrajectoryState {
  StateVector psi;
  double t = 0.0;
  OuProcess ou_a, ou_b;
  PiControllerState controller;
  double dz = 1.0;
  Xoshiro256ss jump_stream;
  long steps = 0;
  long jumps = 0;
  long large_p_warnings = 0;  // steps where sum_j p_j exceeded 0.1
};

// Scenario-constant data hoisted out of the per-step loop.
struct StepContext {
  ExchangeCouplings j;
  ComplexMatrix h_exchange;     // (1/4) sum_k J_k s_k (x) s_k
  ComplexMatrix dm_op;          // s_x (x) s_y - s_y (x) s_x
  ComplexMatrix decay_op;       // sum_j rate_j L_j^dagger L_j
  std::vector<JumpChannel> channels;
  std::vector<ComplexMatrix> ldl;  // per-channel L^dagger L
  double b0 = 1.0;
  double dt = 0.01;
  bool feedback = false;
  double cal_slope = 0.83;
  double cal_intercept = -0.12;
  Integrator integrator = Integrator::Rk4;
};

StepContext make_step_context(const ScenarioConfig& cfg);

// Trajectory `index` of an ensemble, with disjoint streams for OU-a, OU-b
// and jumps derived from (cfg.master_seed, index).
TrajectoryState make_trajectory(const ScenarioConfig& cfg, std::uint64_t index);

// One closed-loop step: measure the proxy, update D_z through the PI law
// (when feedback is on), advance the noise, rebuild H, then either apply one
// jump or take the deterministic step, and renormalize.
void step_closed_loop(TrajectoryState& s, const StepContext& ctx);

// Convenience form matching the scenario-level contract.
TrajectoryState step_closed_loop(TrajectoryState s, const ScenarioConfig& cfg);

}  // namespace entctl
