#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "entctl/config.hpp"

using namespace entctl;

TEST_CASE("empty config text gives the documented defaults") {
  const ScenarioConfig cfg = parse_config_text("", "test");
  CHECK(cfg.model == ModelKind::XXX);
  CHECK(cfg.alpha == 1.0);
  CHECK(cfg.b0 == 1.0);
  CHECK(cfg.tau_c == 0.1);
  CHECK(cfg.gamma1 == 0.01);
  CHECK(cfg.gamma2 == 0.01);
  CHECK(cfg.dz0 == 1.0);
  CHECK(cfg.dt == 0.01);
  CHECK(cfg.t_total == 150.0);
  CHECK(cfg.n_traj == 1000);
  CHECK(cfg.sample_stride == 10);
  CHECK(cfg.kp == 0.5);
  CHECK(cfg.ki == 0.1);
  CHECK(cfg.target == 0.4);
  CHECK(cfg.dz_min == 0.0);
  CHECK(cfg.dz_max == 2.0);
  CHECK(cfg.integrator == Integrator::Rk4);
  CHECK(cfg.steps() == 15000);
  CHECK(cfg.sample_count() == 1501);
}

TEST_CASE("key parsing, comments, and model presets") {
  const ScenarioConfig cfg = parse_config_text(
      "# comment line\n"
      "model = XYZ\n"
      "alpha = 2.5   # trailing comment\n"
      "sigma = 0.2\n"
      "feedback = true\n"
      "n_traj = 64\n"
      "master_seed = 123456789\n"
      "integrator = euler\n",
      "test");
  CHECK(cfg.model == ModelKind::XYZ);
  CHECK(cfg.alpha == 2.5);
  CHECK(cfg.sigma == 0.2);
  CHECK(cfg.feedback);
  CHECK(cfg.n_traj == 64);
  CHECK(cfg.master_seed == 123456789ULL);
  CHECK(cfg.integrator == Integrator::Euler);

  const ExchangeCouplings j = couplings(cfg.model);
  CHECK(j.jx == 1.0);
  CHECK(j.jy == 2.0);
  CHECK(j.jz == 3.0);
}

TEST_CASE("validation failures name the key") {
  CHECK_THROWS_WITH_AS(parse_config_text("sigma = -1\n", "test"),
                       doctest::Contains("sigma"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("dt = 0\n", "test"), doctest::Contains("dt"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("n_traj = 0\n", "test"),
                       doctest::Contains("n_traj"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("alpha = -2\n", "test"),
                       doctest::Contains("alpha"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("tau_c = 0\n", "test"), doctest::Contains("tau_c"),
                       std::invalid_argument);
}

TEST_CASE("parse failures carry line information") {
  CHECK_THROWS_WITH_AS(parse_config_text("alpha = 1\nnot a key value pair\n", "test"),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("alpha = xyz\n", "test"),
                       doctest::Contains("alpha"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("mystery = 3\n", "test"),
                       doctest::Contains("mystery"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config_text("model = ABC\n", "test"),
                       doctest::Contains("model"), std::invalid_argument);
}

TEST_CASE("canonical text and hash are stable and value-sensitive") {
  const ScenarioConfig a = parse_config_text("", "test");
  const ScenarioConfig b = parse_config_text("alpha = 1.0\n", "test");
  CHECK(canonical_text(a) == canonical_text(b));
  CHECK(config_hash(a) == config_hash(b));

  const ScenarioConfig c = parse_config_text("alpha = 2.0\n", "test");
  CHECK(config_hash(a) != config_hash(c));
}
