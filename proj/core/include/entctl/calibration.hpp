#pragma once

#include <span>
#include <utility>
#include <vector>

#include "entctl/config.hpp"
#include "entctl/entanglement.hpp"

namespace entctl {

// (m, N) samples from closed-system (gamma = 0, sigma = 0, feedback off)
// evolutions, one per alpha. A single alpha is degenerate here -- the z-only
// Hamiltonian conserves <sigma_z sigma_z> exactly -- so the proxy range has
// to come from sweeping the initial state.
std::vector<std::pair<double, double>> calibration_dataset(
    ModelKind model, std::span<const double> alphas, double t_total = 150.0,
    double dt = 0.01, int sample_stride = 10);

// Sweep alpha = 0.25 .. 3.0 in steps of 0.25.
std::vector<double> default_calibration_alphas();

}  // namespace entctl
