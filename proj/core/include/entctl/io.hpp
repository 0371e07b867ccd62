#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "entctl/config.hpp"

namespace entctl {

inline constexpr std::string_view kVersion = "0.1.0";

// Locale-independent float formatting, 9 significant digits; CSV outputs are
// byte-reproducible for identical inputs.
std::string format_g9(double v);

using CsvRow = std::vector<std::string>;

void write_csv(const std::filesystem::path& path, std::span<const std::string> header,
               std::span<const CsvRow> rows);

// JSON sidecar describing a run: command, config echo, config hash, seed,
// code version, and the files it produced.
void write_manifest(const std::filesystem::path& path, const std::string& command,
                    const ScenarioConfig& cfg, std::span<const std::string> outputs,
                    const std::vector<std::pair<std::string, std::string>>& extras = {});

// Minimal polyline SVG, one curve per series (all sharing xs).
void write_svg_lines(const std::filesystem::path& path, std::span<const double> xs,
                     std::span<const std::vector<double>> series,
                     std::span<const std::string> labels, const std::string& x_label,
                     const std::string& y_label);

}  // namespace entctl
