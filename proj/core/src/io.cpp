#include "entctl/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace entctl {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {
std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // binary: '\n' line endings everywhere
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}
}  // namespace

void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               std::span<const CsvRow> rows) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const CsvRow& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_manifest(const std::filesystem::path& path, const std::string& command,
                    const ScenarioConfig& cfg, std::span<const std::string> outputs,
                    const std::vector<std::pair<std::string, std::string>>& extras) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = std::string(kVersion);
  j["master_seed"] = cfg.master_seed;
  j["config_hash"] = config_hash(cfg);
  nlohmann::json cj;
  cj["model"] = std::string(to_string(cfg.model));
  cj["alpha"] = cfg.alpha;
  cj["b0"] = cfg.b0;
  cj["sigma"] = cfg.sigma;
  cj["tau_c"] = cfg.tau_c;
  cj["gamma1"] = cfg.gamma1;
  cj["gamma2"] = cfg.gamma2;
  cj["dz0"] = cfg.dz0;
  cj["dt"] = cfg.dt;
  cj["t_total"] = cfg.t_total;
  cj["feedback"] = cfg.feedback;
  cj["kp"] = cfg.kp;
  cj["ki"] = cfg.ki;
  cj["target"] = cfg.target;
  cj["dz_min"] = cfg.dz_min;
  cj["dz_max"] = cfg.dz_max;
  cj["n_traj"] = cfg.n_traj;
  cj["master_seed"] = cfg.master_seed;
  cj["sample_stride"] = cfg.sample_stride;
  cj["integrator"] = std::string(to_string(cfg.integrator));
  cj["cal_slope"] = cfg.cal_slope;
  cj["cal_intercept"] = cfg.cal_intercept;
  j["config"] = cj;
  j["outputs"] = std::vector<std::string>(outputs.begin(), outputs.end());
  for (const auto& [k, v] : extras) j[k] = v;

  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_svg_lines(const std::filesystem::path& path, std::span<const double> xs,
                     std::span<const std::vector<double>> series,
                     std::span<const std::string> labels, const std::string& x_label,
                     const std::string& y_label) {
  constexpr int kW = 860, kH = 480, kPad = 50;
  static const char* kColors[] = {"#1a1a1a", "#c0392b", "#2471a3", "#1e8449", "#8e44ad"};

  double xmin = xs.empty() ? 0 : xs.front(), xmax = xs.empty() ? 1 : xs.back();
  double ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (double v : s) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (!(ymax > ymin)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;

  auto px = [&](double x) { return kPad + (x - xmin) / (xmax - xmin) * (kW - 2 * kPad); };
  auto py = [&](double y) { return kH - kPad - (y - ymin) / (ymax - ymin) * (kH - 2 * kPad); };

  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad
      << "\" y2=\"" << kH - kPad << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\""
      << kH - kPad << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" font-size=\"13\">" << x_label
      << "</text>\n";
  out << "<text x=\"14\" y=\"" << kH / 2 << "\" font-size=\"13\" transform=\"rotate(-90 14 "
      << kH / 2 << ")\">" << y_label << "</text>\n";
  out << "<text x=\"" << kPad << "\" y=\"" << kH - kPad + 16 << "\" font-size=\"11\">"
      << format_g9(xmin) << "</text>\n";
  out << "<text x=\"" << kW - kPad - 30 << "\" y=\"" << kH - kPad + 16
      << "\" font-size=\"11\">" << format_g9(xmax) << "</text>\n";
  out << "<text x=\"6\" y=\"" << kH - kPad << "\" font-size=\"11\">" << format_g9(ymin)
      << "</text>\n";
  out << "<text x=\"6\" y=\"" << kPad << "\" font-size=\"11\">" << format_g9(ymax)
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 5];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    const auto& ys = series[s];
    const std::size_t npts = std::min(xs.size(), ys.size());
    for (std::size_t i = 0; i < npts; ++i)
      out << format_g9(px(xs[i])) << ',' << format_g9(py(ys[i])) << ' ';
    out << "\"/>\n";
    if (s < labels.size())
      out << "<text x=\"" << kW - kPad - 150 << "\" y=\"" << kPad + 16 * (s + 1)
          << "\" font-size=\"12\" fill=\"" << color << "\">" << labels[s] << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace entctl
