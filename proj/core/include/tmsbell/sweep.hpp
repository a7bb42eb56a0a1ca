#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tmsbell/bell.hpp"

namespace tmsbell {

struct RGrid {
  double start = 0.0;
  double stop = 1.0;
  int count = 101;

  /// Parses "start:stop:count".
  static RGrid parse(const std::string& text);
  std::vector<double> points() const;
};

struct SweepSpec {
  std::vector<double> s_values;
  std::vector<double> nbar_values;
  RGrid r_grid;
  OptimizerConfig optimizer;
  bool emit_plot_script = false;
  /// Append a gamma*tau = -ln(1 - r^2) column to the CSV.
  bool gamma_tau_column = false;
  int threads = 1;
};

struct SweepRow {
  double s = 0.0;
  double nbar = 0.0;
  double r = 0.0;
  double b_max = 0.0;
  double arg_a = 0.0;
  double arg_b = 0.0;
  bool converged = false;
};

void validate(const SweepSpec& spec);

/// One row per (s, nbar, r) lattice point, ordered by s, then nbar, then r.
/// Non-converged maximizations are flagged in the row and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// CSV with header `s,nbar,r,b_max,arg_a,arg_b,converged[,gamma_tau]`,
/// every real printed with 17 significant digits.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool gamma_tau_column = false);

/// Standalone matplotlib script that plots |B|_max against r from `csv_path`.
std::string plot_script(const std::string& csv_path);

/// Result of parsing a sweep configuration file.
struct SweepConfig {
  SweepSpec spec;
  std::optional<std::string> out;
  std::optional<std::string> plot_script_path;
};

/// Plain-text configuration: one `key = value` per line, lists comma-separated,
/// `#` starts a comment. Keys: s, nbar, r_grid, restarts, seed, search_radius,
/// max_iterations, step_tolerance, value_tolerance, threads, gamma_tau, out,
/// plot_script.
SweepConfig parse_sweep_config(std::istream& in);

/// Comma-separated list of reals.
std::vector<double> parse_real_list(const std::string& text);

struct TauCResult {
  bool found = false;
  double r_c = 0.0;
  /// gamma * tau_c = -ln(1 - r_c^2).
  double gamma_tau = 0.0;
};

/// First r in (0, 1) where |B|_max drops to 2: a monotone scan at spacing 1e-3
/// brackets the crossing, bisection refines it to `tol`.
TauCResult find_tau_c(double s, double nbar, double tol = 1e-6, const OptimizerConfig& cfg = {});

}  // namespace tmsbell
