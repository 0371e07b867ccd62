// entctl: trajectory simulator for a noisy two-qubit exchange model with
// PI-controlled DM interaction, plus the field-estimation post-processing.
//
// Subcommands: simulate, calibrate, table-b1, sweep-dz, qfi, tune-gains,
// convergence. Every command writes CSV output plus a manifest.json into
// --out and is byte-reproducible for identical inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"

#include "entctl/calibration.hpp"
#include "entctl/config.hpp"
#include "entctl/control.hpp"
#include "entctl/ensemble.hpp"
#include "entctl/entanglement.hpp"
#include "entctl/io.hpp"
#include "entctl/metrology.hpp"

namespace fs = std::filesystem;
using namespace entctl;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> traj;
  bool fast = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "scenario config file (key = value)");
  cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", opts.seed, "master seed override");
  cmd->add_option("--traj", opts.traj, "trajectory count override");
  cmd->add_flag("--fast", opts.fast, "desk-scale run: n_traj = 200");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = auto)");
}

ScenarioConfig load_config(const CommonOpts& opts) {
  ScenarioConfig cfg =
      opts.config_path.empty() ? ScenarioConfig{} : parse_config_file(opts.config_path);
  if (opts.seed) cfg.master_seed = *opts.seed;
  if (opts.fast) cfg.n_traj = 200;
  if (opts.traj) cfg.n_traj = *opts.traj;
  validate(cfg);
  return cfg;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("invalid ") + what + " entry: '" + tok + "'");
    }
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
  return out;
}

std::string fb_str(bool feedback) { return feedback ? "on" : "off"; }

int cmd_simulate(const CommonOpts& opts, bool emit_svg) {
  const ScenarioConfig cfg = load_config(opts);
  const EnsembleStats stats = run_ensemble(cfg, opts.threads);

  std::vector<std::string> header = {"t_ms", "mean_N", "sem_N", "mean_zz", "mean_dz"};
  std::vector<CsvRow> rows;
  rows.reserve(stats.times.size());
  for (std::size_t i = 0; i < stats.times.size(); ++i)
    rows.push_back({format_g9(stats.times[i]), format_g9(stats.mean_negativity[i]),
                    format_g9(stats.sem_negativity[i]), format_g9(stats.mean_zz[i]),
                    format_g9(stats.mean_dz[i])});
  const fs::path csv = fs::path(opts.out_dir) / "timeseries.csv";
  write_csv(csv, header, rows);

  const WindowAverage full = time_averaged_negativity(stats, 0.0, cfg.t_total);
  std::vector<std::pair<std::string, std::string>> extras = {
      {"n_bar_full", format_g9(full.n_bar)}, {"n_bar_full_sem", format_g9(full.sem)}};
  std::cout << "N_bar over [0, " << format_g9(cfg.t_total) << "] ms = " << format_g9(full.n_bar)
            << " +/- " << format_g9(full.sem) << "\n";
  if (cfg.t_total > 100.0) {
    const WindowAverage ss = time_averaged_negativity(stats, 100.0, cfg.t_total);
    extras.emplace_back("n_bar_steady", format_g9(ss.n_bar));
    extras.emplace_back("n_bar_steady_sem", format_g9(ss.sem));
    std::cout << "N_bar over [100, " << format_g9(cfg.t_total)
              << "] ms = " << format_g9(ss.n_bar) << " +/- " << format_g9(ss.sem) << "\n";
  }

  std::vector<std::string> outputs = {csv.string()};
  if (emit_svg) {
    const fs::path svg = fs::path(opts.out_dir) / "timeseries.svg";
    std::vector<std::vector<double>> series = {stats.mean_negativity, stats.mean_dz};
    std::vector<std::string> labels = {"mean negativity", "mean D_z"};
    write_svg_lines(svg, stats.times, series, labels, "t (ms)", "value");
    outputs.push_back(svg.string());
  }
  write_manifest(fs::path(opts.out_dir) / "manifest.json", "simulate", cfg, outputs, extras);
  return 0;
}

int cmd_calibrate(const CommonOpts& opts, const std::string& alphas_text) {
  ScenarioConfig cfg = load_config(opts);
  const std::vector<double> alphas = alphas_text.empty()
                                         ? default_calibration_alphas()
                                         : parse_list(alphas_text, "alpha");
  const auto samples =
      calibration_dataset(cfg.model, alphas, cfg.t_total, cfg.dt, cfg.sample_stride);
  const CalibrationFit fit = fit_calibration(samples);

  std::vector<std::string> header = {"m", "n"};
  std::vector<CsvRow> rows;
  rows.reserve(samples.size());
  for (const auto& [m, n] : samples) rows.push_back({format_g9(m), format_g9(n)});
  const fs::path samples_csv = fs::path(opts.out_dir) / "calibration_samples.csv";
  write_csv(samples_csv, header, rows);

  std::vector<std::string> fit_header = {"slope", "intercept", "pearson_r", "sample_count"};
  std::vector<CsvRow> fit_rows = {{format_g9(fit.slope), format_g9(fit.intercept),
                                   format_g9(fit.pearson_r), std::to_string(fit.sample_count)}};
  const fs::path fit_csv = fs::path(opts.out_dir) / "calibration_fit.csv";
  write_csv(fit_csv, fit_header, fit_rows);

  std::cout << "calibration fit: slope = " << format_g9(fit.slope)
            << ", intercept = " << format_g9(fit.intercept)
            << ", pearson r = " << format_g9(fit.pearson_r) << " (" << fit.sample_count
            << " samples)\n";
  std::vector<std::string> outputs = {samples_csv.string(), fit_csv.string()};
  write_manifest(fs::path(opts.out_dir) / "manifest.json", "calibrate", cfg, outputs,
                 {{"fit_slope", format_g9(fit.slope)},
                  {"fit_intercept", format_g9(fit.intercept)},
                  {"fit_pearson_r", format_g9(fit.pearson_r)}});
  return 0;
}

struct TableRow {
  ModelKind model;
  double alpha, sigma;
  double reference_off, reference_on;
};

int cmd_table_b1(const CommonOpts& opts) {
  // the six (model, alpha, sigma) combinations with reference values
  const std::vector<TableRow> table = {
      {ModelKind::XXX, 1.0, 0.2, 0.28, 0.44}, {ModelKind::XXX, 1.0, 0.5, 0.21, 0.42},
      {ModelKind::XXX, 1.0, 1.0, 0.12, 0.28}, {ModelKind::XXX, 2.0, 0.5, 0.15, 0.33},
      {ModelKind::XXX, 3.0, 0.5, 0.09, 0.22}, {ModelKind::XYZ, 1.0, 0.5, 0.20, 0.38},
  };
  ScenarioConfig base = load_config(opts);

  std::vector<std::string> header = {"model",         "alpha",      "sigma",
                                     "feedback",      "n_bar",      "sem",
                                     "n_bar_steady",  "sem_steady", "reference",
                                     "delta_vs_reference"};
  std::vector<CsvRow> rows;
  for (const TableRow& tr : table) {
    for (bool fb : {false, true}) {
      ScenarioConfig cfg = base;
      cfg.model = tr.model;
      cfg.alpha = tr.alpha;
      cfg.sigma = tr.sigma;
      cfg.feedback = fb;
      const EnsembleStats stats = run_ensemble(cfg, opts.threads);
      const WindowAverage full = time_averaged_negativity(stats, 0.0, cfg.t_total);
      const WindowAverage steady =
          time_averaged_negativity(stats, std::min(100.0, cfg.t_total), cfg.t_total);
      const double ref = fb ? tr.reference_on : tr.reference_off;
      rows.push_back({std::string(to_string(tr.model)), format_g9(tr.alpha),
                      format_g9(tr.sigma), fb_str(fb), format_g9(full.n_bar),
                      format_g9(full.sem), format_g9(steady.n_bar), format_g9(steady.sem),
                      format_g9(ref), format_g9(full.n_bar - ref)});
      std::cout << to_string(tr.model) << " alpha=" << format_g9(tr.alpha)
                << " sigma=" << format_g9(tr.sigma) << " feedback=" << fb_str(fb)
                << ": N_bar=" << format_g9(full.n_bar) << " (ref " << format_g9(ref) << ")\n";
    }
  }
  const fs::path csv = fs::path(opts.out_dir) / "table_b1.csv";
  write_csv(csv, header, rows);
  std::vector<std::string> outputs = {csv.string()};
  write_manifest(fs::path(opts.out_dir) / "manifest.json", "table-b1", base, outputs);
  return 0;
}

int cmd_sweep_dz(const CommonOpts& opts, const std::string& dz_text,
                 const std::string& alpha_text) {
  ScenarioConfig base = load_config(opts);
  std::vector<double> dz_list;
  if (dz_text.empty()) {
    for (double d = 0.0; d <= 2.0 + 1e-9; d += 0.2) dz_list.push_back(d);
  } else {
    dz_list = parse_list(dz_text, "dz");
  }
  const std::vector<double> alpha_list =
      alpha_text.empty() ? std::vector<double>{1.0, 2.0, 3.0} : parse_list(alpha_text, "alpha");

  std::vector<std::string> header = {"alpha", "dz0", "feedback", "n_bar", "sem"};
  std::vector<CsvRow> rows;
  for (double alpha : alpha_list) {
    for (double dz0 : dz_list) {
      for (bool fb : {false, true}) {
        ScenarioConfig cfg = base;
        cfg.alpha = alpha;
        cfg.dz0 = dz0;
        cfg.feedback = fb;
        const EnsembleStats stats = run_ensemble(cfg, opts.threads);
        const WindowAverage full = time_averaged_negativity(stats, 0.0, cfg.t_total);
        rows.push_back({format_g9(alpha), format_g9(dz0), fb_str(fb), format_g9(full.n_bar),
                        format_g9(full.sem)});
      }
    }
  }
  const fs::path csv = fs::path(opts.out_dir) / "sweep_dz.csv";
  write_csv(csv, header, rows);
  std::vector<std::string> outputs = {csv.string()};
  write_manifest(fs::path(opts.out_dir) / "manifest.json", "sweep-dz", base, outputs);
  return 0;
}

int cmd_qfi(const CommonOpts& opts, const std::string& b0_text, double delta,
            double window_start) {
  ScenarioConfig base = load_config(opts);
  const std::vector<double> b0_list = b0_text.empty()
                                          ? std::vector<double>{0.6, 0.8, 1.0, 1.2, 1.4}
                                          : parse_list(b0_text, "b0");
  const double window_end = base.t_total;
  if (!(window_start < window_end))
    throw std::invalid_argument("qfi: window start must precede t_total");

  std::vector<std::string> header = {"b0",     "f_q",          "delta",
                                     "n_traj", "window_start", "window_end"};
  std::vector<CsvRow> rows;
  std::vector<std::string> fig7_header = {"n_bar", "sqrt_f_q", "predicted_gain"};
  std::vector<CsvRow> fig7_rows;
  for (double b0 : b0_list) {
    ScenarioConfig minus = base;
    minus.b0 = b0 - delta;
    ScenarioConfig plus = base;
    plus.b0 = b0 + delta;
    const EnsembleStats sm = run_ensemble(minus, opts.threads);
    const EnsembleStats sp = run_ensemble(plus, opts.threads);
    const SteadyStateEstimate rm = steady_state_density(sm, window_start, window_end);
    const SteadyStateEstimate rp = steady_state_density(sp, window_start, window_end);
    const QfiResult q = qfi_finite_difference(rm, rp, delta);
    rows.push_back({format_g9(b0), format_g9(q.f_q), format_g9(delta),
                    std::to_string(base.n_traj), format_g9(window_start),
                    format_g9(window_end)});
    // n_bar for the pair, averaged across the +/- runs over the same window
    const WindowAverage wm = time_averaged_negativity(sm, window_start, window_end);
    const WindowAverage wp = time_averaged_negativity(sp, window_start, window_end);
    const double n_bar = 0.5 * (wm.n_bar + wp.n_bar);
    fig7_rows.push_back({format_g9(n_bar), format_g9(std::sqrt(std::max(q.f_q, 0.0))),
                         format_g9(scaling_prediction(n_bar))});
    std::cout << "b0=" << format_g9(b0) << ": F_Q=" << format_g9(q.f_q)
              << " n_bar=" << format_g9(n_bar) << "\n";
  }
  const fs::path csv = fs::path(opts.out_dir) / "qfi.csv";
  write_csv(csv, header, rows);
  const fs::path fig7 = fs::path(opts.out_dir) / "qfi_vs_negativity.csv";
  write_csv(fig7, fig7_header, fig7_rows);
  std::vector<std::string> outputs = {csv.string(), fig7.string()};
  write_manifest(fs::path(opts.out_dir) / "manifest.json", "qfi", base, outputs,
                 {{"delta", format_g9(delta)}, {"window_start", format_g9(window_start)}});
  return 0;
}

int cmd_tune_gains(const CommonOpts& opts) {
  // tuning scenario: XXX, alpha = 1, sigma = 0.5, feedback on, fixed seed
  ScenarioConfig cfg = load_config(opts);
  cfg.model = ModelKind::XXX;
  cfg.alpha = 1.0;
  cfg.sigma = 0.5;
  cfg.feedback = true;
  if (!opts.traj && !opts.fast) cfg.n_traj = 100;  // grid has 100 cells; keep cells cheap

  std::vector<double> grid_kp, grid_ki;
  for (double kp = 0.1; kp <= 1.0 + 1e-9; kp += 0.1) grid_kp.push_back(kp);
  for (double ki = 0.05; ki <= 0.5 + 1e-9; ki += 0.05) grid_ki.push_back(ki);

  std::vector<std::tuple<double, double, double>> cells;
  auto objective = [&](double kp, double ki) {
    ScenarioConfig c = cfg;
    c.kp = kp;
    c.ki = ki;
    const EnsembleStats stats = run_ensemble(c, opts.threads);
    double mse = 0.0;
    for (double n : stats.mean_negativity) {
      const double e = n - c.target;
      mse += e * e;
    }
    mse /= static_cast<double>(stats.mean_negativity.size());
    cells.emplace_back(kp, ki, mse);
    return mse;
  };
  const GainSearchResult best = gain_grid_search(grid_kp, grid_ki, objective);

  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    if (std::get<2>(a) != std::get<2>(b)) return std::get<2>(a) < std::get<2>(b);
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  std::vector<std::string> header = {"rank", "kp", "ki", "mse"};
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i)
    rows.push_back({std::to_string(i + 1), format_g9(std::get<0>(cells[i])),
                    format_g9(std::get<1>(cells[i])), format_g9(std::get<2>(cells[i]))});
  const fs::path csv = fs::path(opts.out_dir) / "gain_search.csv";
  write_csv(csv, header, rows);
  std::cout << "best gains: kp = " << format_g9(best.kp) << ", ki = " << format_g9(best.ki)
            << " (mse = " << format_g9(best.mse) << ")\n";
  std::vector<std::string> outputs = {csv.string()};
  write_manifest(fs::path(opts.out_dir) / "manifest.json", "tune-gains", cfg, outputs,
                 {{"best_kp", format_g9(best.kp)},
                  {"best_ki", format_g9(best.ki)},
                  {"best_mse", format_g9(best.mse)}});
  return 0;
}

int cmd_convergence(const CommonOpts& opts) {
  const ScenarioConfig cfg = load_config(opts);
  ScenarioConfig half = cfg;
  half.dt = cfg.dt / 2.0;
  half.sample_stride = cfg.sample_stride * 2;  // same sampled time grid

  const EnsembleStats coarse = run_ensemble(cfg, opts.threads);
  const EnsembleStats fine = run_ensemble(half, opts.threads);
  const WindowAverage wc = time_averaged_negativity(coarse, 0.0, cfg.t_total);
  const WindowAverage wf = time_averaged_negativity(fine, 0.0, cfg.t_total);
  const double rel =
      std::abs(wf.n_bar - wc.n_bar) / std::max(std::abs(wc.n_bar), 1e-12);

  std::vector<std::string> header = {"dt_ms", "n_bar", "sem"};
  std::vector<CsvRow> rows = {
      {format_g9(cfg.dt), format_g9(wc.n_bar), format_g9(wc.sem)},
      {format_g9(half.dt), format_g9(wf.n_bar), format_g9(wf.sem)}};
  const fs::path csv = fs::path(opts.out_dir) / "convergence.csv";
  write_csv(csv, header, rows);

  std::cout << "N_bar(dt = " << format_g9(cfg.dt) << ") = " << format_g9(wc.n_bar)
            << ", N_bar(dt = " << format_g9(half.dt) << ") = " << format_g9(wf.n_bar)
            << ", relative change = " << format_g9(rel) << "\n";
  if (cfg.sigma > 0.0 || cfg.gamma1 > 0.0 || cfg.gamma2 > 0.0)
    std::cout << "note: stochastic scenario; the step counts differ so random streams "
                 "decorrelate, and the comparison carries Monte Carlo noise of order "
              << format_g9(std::hypot(wc.sem, wf.sem)) << "\n";
  const bool ok = rel < 0.01;
  std::cout << (ok ? "converged: change < 1%\n" : "NOT converged: change >= 1%\n");
  std::vector<std::string> outputs = {csv.string()};
  write_manifest(fs::path(opts.out_dir) / "manifest.json", "convergence", cfg, outputs,
                 {{"relative_change", format_g9(rel)}, {"converged", ok ? "true" : "false"}});
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit entanglement feedback simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOpts o_sim, o_cal, o_b1, o_sweep, o_qfi, o_tune, o_conv;
  bool sim_svg = false;
  std::string cal_alphas, sweep_dz, sweep_alphas, qfi_b0s;
  double qfi_delta = 0.01, qfi_window = 100.0;

  CLI::App* sim = app.add_subcommand("simulate", "run one scenario ensemble");
  add_common(sim, o_sim);
  sim->add_flag("--svg", sim_svg, "also emit an SVG line plot");

  CLI::App* cal = app.add_subcommand("calibrate", "fit the negativity proxy calibration");
  add_common(cal, o_cal);
  cal->add_option("--alphas", cal_alphas, "comma-separated alpha sweep for the dataset");

  CLI::App* b1 = app.add_subcommand("table-b1", "run the six-row summary table, on and off");
  add_common(b1, o_b1);

  CLI::App* sweep = app.add_subcommand("sweep-dz", "time-averaged negativity vs initial D_z");
  add_common(sweep, o_sweep);
  sweep->add_option("--dz-list", sweep_dz, "comma-separated D_z(0) values");
  sweep->add_option("--alpha-list", sweep_alphas, "comma-separated alpha values");

  CLI::App* qfi = app.add_subcommand("qfi", "Fisher information of the steady state vs b0");
  add_common(qfi, o_qfi);
  qfi->add_option("--b0-list", qfi_b0s, "comma-separated b0 values");
  qfi->add_option("--delta", qfi_delta, "finite-difference step")->capture_default_str();
  qfi->add_option("--window-start", qfi_window, "steady-state window start (ms)")
      ->capture_default_str();

  CLI::App* tune = app.add_subcommand("tune-gains", "grid search over PI gains");
  add_common(tune, o_tune);

  CLI::App* conv = app.add_subcommand("convergence", "compare N_bar at dt and dt/2");
  add_common(conv, o_conv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(o_sim, sim_svg);
    if (cal->parsed()) return cmd_calibrate(o_cal, cal_alphas);
    if (b1->parsed()) return cmd_table_b1(o_b1);
    if (sweep->parsed()) return cmd_sweep_dz(o_sweep, sweep_dz, sweep_alphas);
    if (qfi->parsed()) return cmd_qfi(o_qfi, qfi_b0s, qfi_delta, qfi_window);
    if (tune->parsed()) return cmd_tune_gains(o_tune);
    if (conv->parsed()) return cmd_convergence(o_conv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
