#include "entctl/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace entctl {

OuProcess ou_init(double tau_c, double sigma, std::uint64_t seed) {
  if (!(tau_c > 0.0)) throw std::invalid_argument("ou_init: tau_c must be > 0");
  if (sigma < 0.0) throw std::invalid_argument("ou_init: sigma must be >= 0");
  OuProcess p;
  p.tau_c = tau_c;
  p.sigma = sigma;
  p.stream = GaussianStream(seed);
  p.value = sigma * p.stream.next();  // exactly 0 when sigma == 0
  return p;
}

OuProcess ou_step_with(OuProcess p, double dt, double z) {
  const double diffusion = std::sqrt(2.0 * p.sigma * p.sigma / p.tau_c) * std::sqrt(dt);
  p.value = p.value - (p.value / p.tau_c) * dt + diffusion * z;
  return p;
}

OuProcess ou_step(OuProcess p, double dt) {
  const double z = p.stream.next();
  return ou_step_with(std::move(p), dt, z);
}

}  // namespace entctl
