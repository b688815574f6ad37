#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "h2ror/linalg.hpp"

namespace h2ror::cli {

struct ConfigEcho {
  std::string command;
  std::string model;
  std::string rom0;
  int r = 0;
  int maxit = 100;
  double alpha_min = 1e-20;
  double tol = 1e-4;
  double cond_threshold = 1e4;
  std::optional<std::uint64_t> seed;

  bool operator==(const ConfigEcho&) const = default;
};

struct RejectionEntry {
  double alpha = 0.0;
  std::string reason;

  bool operator==(const RejectionEntry&) const = default;
};

struct RecordEntry {
  int k = 0;
  double alpha = 0.0;
  bool stable = false;
  std::optional<double> h2_error;  // absolute
  std::optional<int> cauchy_index;
  std::optional<double> criterion;
  std::vector<std::complex<double>> poles;
  std::vector<RejectionEntry> rejections;

  bool operator==(const RecordEntry&) const = default;
};

struct RomMatrices {
  Matrix E, A, B, C;

  bool operator==(const RomMatrices& other) const;
};

struct ResidualEntry {
  std::vector<double> right;
  std::vector<double> left;
  std::vector<double> hermite;
  double aggregate = 0.0;

  bool operator==(const ResidualEntry&) const = default;
};

struct ModelInfo {
  int order = 0;
  int inputs = 0;
  int outputs = 0;
  bool stable = false;
  double spectral_abscissa = 0.0;
  std::vector<std::complex<double>> poles;
  std::optional<int> cauchy_index;

  bool operator==(const ModelInfo&) const = default;
};

struct RunReport {
  std::string version;
  ConfigEcho config;
  std::optional<std::string> termination;  // iterative commands only
  std::vector<std::string> warnings;
  std::optional<double> h2_norm_fom;
  std::vector<RecordEntry> history;
  std::vector<RejectionEntry> final_rejections;
  std::optional<RomMatrices> final_rom;
  std::optional<ResidualEntry> optimality_residual;
  std::optional<ModelInfo> info;
  std::map<std::string, double> timings;  // seconds per phase, opt-in

  bool operator==(const RunReport&) const = default;
};

std::string serialize(const RunReport& report);

/// Throws Error(kParse) on malformed input.
RunReport parse_report(const std::string& text);

/// CSV with columns k, alpha, stable, h2_error, cauchy_index and
/// pole_real_i, pole_imag_i for i = 1..r. h2_error is relative to the FOM
/// norm and left empty for unstable iterates.
void emit_plot_data(const RunReport& report, const std::string& path);
std::string plot_data_csv(const RunReport& report);

}  // namespace h2ror::cli
