#pragma once

#include <cstdint>

#include "entctl/rng.hpp"

namespace entctl {

// Ornstein-Uhlenbeck field fluctuation delta_B(t): correlation time tau_c (ms),
// stationary RMS sigma (units of J). Owns its own Gaussian stream.
struct OuProcess {
  double value = 0.0;
  double tau_c = 0.1;
  double sigma = 0.0;
  GaussianStream stream;
};

// Initial value drawn from the stationary law Normal(0, sigma^2);
// deterministic for a fixed seed. Throws for tau_c <= 0 or sigma < 0.
OuProcess ou_init(double tau_c, double sigma, std::uint64_t seed);

// Euler-Maruyama update with a supplied standard-normal variate:
// value' = value - (value/tau_c) dt + sqrt(2 sigma^2 / tau_c) sqrt(dt) z
OuProcess ou_step_with(OuProcess p, double dt, double z);

// Same, drawing z from the process's own stream.
OuProcess ou_step(OuProcess p, double dt);

}  // namespace entctl
