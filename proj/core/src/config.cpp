#include "entctl/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entctl {

ExchangeCouplings couplings(ModelKind model) {
  return model == ModelKind::XXX ? ExchangeCouplings::xxx() : ExchangeCouplings::xyz();
}

std::string_view to_string(ModelKind model) {
  return model == ModelKind::XXX ? "XXX" : "XYZ";
}

std::string_view to_string(Integrator integrator) {
  return integrator == Integrator::Rk4 ? "rk4" : "euler";
}

int ScenarioConfig::steps() const { return static_cast<int>(std::llround(t_total / dt)); }

int ScenarioConfig::sample_count() const { return steps() / sample_stride + 1; }

void validate(const ScenarioConfig& cfg) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (!(cfg.alpha > 0.0)) fail("alpha must be > 0");
  if (!(cfg.dt > 0.0)) fail("dt must be > 0");
  if (!(cfg.t_total > 0.0)) fail("t_total must be > 0");
  if (!(cfg.tau_c > 0.0)) fail("tau_c must be > 0");
  if (cfg.sigma < 0.0) fail("sigma must be >= 0");
  if (cfg.gamma1 < 0.0) fail("gamma1 must be >= 0");
  if (cfg.gamma2 < 0.0) fail("gamma2 must be >= 0");
  if (cfg.n_traj < 1) fail("n_traj must be >= 1");
  if (cfg.sample_stride < 1) fail("sample_stride must be >= 1");
  if (!(cfg.dz_min < cfg.dz_max)) fail("dz_min must be < dz_max");
  if (cfg.dz0 < cfg.dz_min || cfg.dz0 > cfg.dz_max) fail("dz0 must lie in [dz_min, dz_max]");
  if (!std::isfinite(cfg.kp) || !std::isfinite(cfg.ki)) fail("kp/ki must be finite");
  if (!(cfg.b0 == cfg.b0)) fail("b0 must be finite");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view v, const std::string& key, int line) {
  double out = 0;
  const char* b = v.data();
  const char* e = v.data() + v.size();
  auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc{} || p != e)
    throw std::invalid_argument("config line " + std::to_string(line) + ": invalid value for '" +
                                key + "'");
  return out;
}

long long parse_int(std::string_view v, const std::string& key, int line) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw std::invalid_argument("config line " + std::to_string(line) + ": invalid value for '" +
                                key + "'");
  return out;
}

std::uint64_t parse_u64(std::string_view v, const std::string& key, int line) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw std::invalid_argument("config line " + std::to_string(line) + ": invalid value for '" +
                                key + "'");
  return out;
}

bool parse_bool(std::string_view v, const std::string& key, int line) {
  if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "off" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config line " + std::to_string(line) + ": invalid value for '" +
                              key + "' (expected true/false)");
}

}  // namespace

ScenarioConfig parse_config_text(std::string_view text, std::string_view origin) {
  ScenarioConfig cfg;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const std::size_t h = line.find('#'); h != std::string_view::npos)
      line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument(std::string(origin) + " line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "model") {
      if (value == "XXX") cfg.model = ModelKind::XXX;
      else if (value == "XYZ") cfg.model = ModelKind::XYZ;
      else
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": model must be XXX or XYZ");
    } else if (key == "alpha") cfg.alpha = parse_double(value, key, line_no);
    else if (key == "b0") cfg.b0 = parse_double(value, key, line_no);
    else if (key == "sigma") cfg.sigma = parse_double(value, key, line_no);
    else if (key == "tau_c") cfg.tau_c = parse_double(value, key, line_no);
    else if (key == "gamma1") cfg.gamma1 = parse_double(value, key, line_no);
    else if (key == "gamma2") cfg.gamma2 = parse_double(value, key, line_no);
    else if (key == "dz0") cfg.dz0 = parse_double(value, key, line_no);
    else if (key == "dt") cfg.dt = parse_double(value, key, line_no);
    else if (key == "t_total") cfg.t_total = parse_double(value, key, line_no);
    else if (key == "feedback") cfg.feedback = parse_bool(value, key, line_no);
    else if (key == "kp") cfg.kp = parse_double(value, key, line_no);
    else if (key == "ki") cfg.ki = parse_double(value, key, line_no);
    else if (key == "target") cfg.target = parse_double(value, key, line_no);
    else if (key == "dz_min") cfg.dz_min = parse_double(value, key, line_no);
    else if (key == "dz_max") cfg.dz_max = parse_double(value, key, line_no);
    else if (key == "n_traj") cfg.n_traj = static_cast<int>(parse_int(value, key, line_no));
    else if (key == "master_seed") cfg.master_seed = parse_u64(value, key, line_no);
    else if (key == "sample_stride")
      cfg.sample_stride = static_cast<int>(parse_int(value, key, line_no));
    else if (key == "integrator") {
      if (value == "rk4") cfg.integrator = Integrator::Rk4;
      else if (value == "euler") cfg.integrator = Integrator::Euler;
      else
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": integrator must be rk4 or euler");
    } else if (key == "cal_slope") cfg.cal_slope = parse_double(value, key, line_no);
    else if (key == "cal_intercept") cfg.cal_intercept = parse_double(value, key, line_no);
    else
      throw std::invalid_argument(std::string(origin) + " line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

std::string canonical_text(const ScenarioConfig& cfg) {
  char buf[64];
  std::string out;
  auto put = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
    out += buf;
  };
  out += "model = ";
  out += to_string(cfg.model);
  out += '\n';
  put("alpha", cfg.alpha);
  put("b0", cfg.b0);
  put("sigma", cfg.sigma);
  put("tau_c", cfg.tau_c);
  put("gamma1", cfg.gamma1);
  put("gamma2", cfg.gamma2);
  put("dz0", cfg.dz0);
  put("dt", cfg.dt);
  put("t_total", cfg.t_total);
  out += cfg.feedback ? "feedback = true\n" : "feedback = false\n";
  put("kp", cfg.kp);
  put("ki", cfg.ki);
  put("target", cfg.target);
  put("dz_min", cfg.dz_min);
  put("dz_max", cfg.dz_max);
  out += "n_traj = " + std::to_string(cfg.n_traj) + '\n';
  out += "master_seed = " + std::to_string(cfg.master_seed) + '\n';
  out += "sample_stride = " + std::to_string(cfg.sample_stride) + '\n';
  out += "integrator = ";
  out += to_string(cfg.integrator);
  out += '\n';
  put("cal_slope", cfg.cal_slope);
  put("cal_intercept", cfg.cal_intercept);
  return out;
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  // FNV-1a, stable across platforms
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace entctl
