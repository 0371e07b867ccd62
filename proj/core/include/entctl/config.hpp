#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "entctl/model.hpp"

namespace entctl {

enum class ModelKind { XXX, XYZ };
enum class Integrator { Rk4, Euler };

ExchangeCouplings couplings(ModelKind model);
std::string_view to_string(ModelKind model);
std::string_view to_string(Integrator integrator);

// Full description of one simulation scenario. Defaults: dt = 0.01 ms,
// t_total = 150 ms, tau_c = 0.1 ms, B0 = 1, D_z(0) = 1, n_traj = 1000,
// gamma1 = gamma2 = 0.01 /ms, gains kp = 0.5, ki = 0.1, target 0.4.
struct ScenarioConfig {
  ModelKind model = ModelKind::XXX;
  double alpha = 1.0;
  double b0 = 1.0;
  double sigma = 0.5;
  double tau_c = 0.1;
  double gamma1 = 0.01;
  double gamma2 = 0.01;
  double dz0 = 1.0;
  double dt = 0.01;
  double t_total = 150.0;
  bool feedback = false;
  double kp = 0.5;
  double ki = 0.1;
  double target = 0.4;
  double dz_min = 0.0;
  double dz_max = 2.0;
  int n_traj = 1000;
  std::uint64_t master_seed = 20240601;
  int sample_stride = 10;
  Integrator integrator = Integrator::Rk4;
  // proxy calibration used by the controller (see entanglement::CalibrationFit)
  double cal_slope = 0.83;
  double cal_intercept = -0.12;

  int steps() const;            // round(t_total / dt)
  int sample_count() const;     // steps()/stride + 1
};

// Throws std::invalid_argument naming the offending key.
void validate(const ScenarioConfig& cfg);

// key = value text, '#' comments; keys named exactly as the fields above.
// Unknown keys and malformed lines raise errors with line information.
ScenarioConfig parse_config_text(std::string_view text, std::string_view origin);
ScenarioConfig parse_config_file(const std::filesystem::path& path);

// Canonical serialization (fixed key order) used for manifests and hashing.
std::string canonical_text(const ScenarioConfig& cfg);
std::uint64_t config_hash(const ScenarioConfig& cfg);  // FNV-1a over canonical_text

}  // namespace entctl
