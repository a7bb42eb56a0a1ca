// tmsbell: Bell nonlocality of a two-mode squeezed vacuum in thermal baths.
//
// Exit codes: 0 success, 1 invalid input, 2 oracle/property failure,
// 3 optimizer non-convergence in `maximize`.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tmsbell/bell.hpp"
#include "tmsbell/error.hpp"
#include "tmsbell/oracle_suite.hpp"
#include "tmsbell/phase_space.hpp"
#include "tmsbell/sweep.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kOracleFailure = 2, kNotConverged = 3 };

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

tmsbell::PhasePoint parse_point(const std::string& text) {
  const auto values = tmsbell::parse_real_list(text);
  if (values.size() == 1) return {values[0], 0.0};
  if (values.size() == 2) return {values[0], values[1]};
  throw tmsbell::InvalidInput("phase point must be 're' or 're,im', got '" + text + "'");
}

struct OptimizerFlags {
  int restarts = tmsbell::OptimizerConfig{}.restarts;
  std::uint64_t seed = tmsbell::OptimizerConfig{}.rng_seed;
  double search_radius = tmsbell::OptimizerConfig{}.search_radius;
  int max_iterations = tmsbell::OptimizerConfig{}.max_iterations;

  void attach(CLI::App* app) {
    app->add_option("--restarts", restarts, "Gradient-ascent restarts")->capture_default_str();
    app->add_option("--seed", seed, "Seed for restart sampling")->capture_default_str();
    app->add_option("--search-radius", search_radius,
                    "Restart sampling radius in units of the Wigner width 1/sqrt(E)")
        ->capture_default_str();
    app->add_option("--max-iterations", max_iterations, "Ascent iterations per start")
        ->capture_default_str();
  }
  tmsbell::OptimizerConfig config() const {
    tmsbell::OptimizerConfig cfg;
    cfg.restarts = restarts;
    cfg.rng_seed = seed;
    cfg.search_radius = search_radius;
    cfg.max_iterations = max_iterations;
    return cfg;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tmsbell::InvalidInput("cannot open '" + path + "' for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space Bell nonlocality of a two-mode squeezed vacuum in thermal baths"};
  app.require_subcommand(1);

  // eval
  double eval_s = 0.0, eval_nbar = 0.0, eval_r = 0.0;
  std::string eval_alpha = "0,0", eval_beta = "0,0";
  auto* eval = app.add_subcommand("eval", "Bell function B(alpha, beta) at one setting");
  eval->add_option("--s", eval_s, "Squeezing s")->required();
  eval->add_option("--nbar", eval_nbar, "Thermal photon number")->capture_default_str();
  eval->add_option("--r", eval_r, "Decayed fraction r in [0,1]")->capture_default_str();
  eval->add_option("--alpha", eval_alpha, "Displacement of mode a as re,im")->capture_default_str();
  eval->add_option("--beta", eval_beta, "Displacement of mode b as re,im")->capture_default_str();

  // maximize
  double max_s = 0.0, max_nbar = 0.0, max_r = 0.0;
  OptimizerFlags max_opt;
  auto* maximize = app.add_subcommand("maximize", "Maximal Bell value |B|_max at one (s, nbar, r)");
  maximize->add_option("--s", max_s, "Squeezing s")->required();
  maximize->add_option("--nbar", max_nbar, "Thermal photon number")->capture_default_str();
  maximize->add_option("--r", max_r, "Decayed fraction r in [0,1]")->capture_default_str();
  max_opt.attach(maximize);

  // sweep
  std::string sweep_s, sweep_nbar = "0", sweep_grid = "0:1:101", sweep_config;
  std::optional<std::string> sweep_out, sweep_plot;
  bool sweep_gamma_tau = false;
  int sweep_threads = 1;
  OptimizerFlags sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "|B|_max over an (s, nbar, r) lattice, as CSV");
  sweep->add_option("--config", sweep_config, "key = value configuration file");
  sweep->add_option("--s", sweep_s, "Comma-separated squeezing values");
  sweep->add_option("--nbar", sweep_nbar, "Comma-separated thermal photon numbers")
      ->capture_default_str();
  sweep->add_option("--r-grid", sweep_grid, "start:stop:count")->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV output path (default: stdout)");
  sweep->add_option("--plot-script", sweep_plot, "Write a matplotlib script for the CSV here");
  sweep->add_flag("--gamma-tau", sweep_gamma_tau, "Append a gamma*tau column");
  sweep->add_option("--threads", sweep_threads, "Worker threads")->capture_default_str();
  sweep_opt.attach(sweep);

  // tau-c
  double tau_s = 0.0, tau_nbar = 0.0, tau_tol = 1e-6;
  OptimizerFlags tau_opt;
  auto* tau = app.add_subcommand("tau-c", "First r where |B|_max falls to 2");
  tau->add_option("--s", tau_s, "Squeezing s > 0")->required();
  tau->add_option("--nbar", tau_nbar, "Thermal photon number")->capture_default_str();
  tau->add_option("--tol", tau_tol, "Bisection tolerance on r")->capture_default_str();
  tau_opt.attach(tau);

  // oracle
  std::string oracle_scope = "all", oracle_s, oracle_nbar, oracle_r;
  tmsbell::OracleOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Run the independent numerical oracles");
  oracle->add_option("--scope", oracle_scope, "fock | convolution | superposition | dominance | all")
      ->capture_default_str();
  oracle->add_option("--s", oracle_s, "Comma-separated squeezing values (default lattice)");
  oracle->add_option("--nbar", oracle_nbar, "Comma-separated thermal photon numbers");
  oracle->add_option("--r", oracle_r, "Comma-separated r values");
  oracle->add_option("--cutoff", oracle_opts.cutoff, "Fock cutoff (0 = tail-bound selection)")
      ->capture_default_str();
  oracle->add_option("--quad-nodes", oracle_opts.quad_nodes, "Gauss-Hermite nodes per axis")
      ->capture_default_str();
  oracle->add_option("--seed", oracle_opts.seed, "Seed for random phase points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*eval) {
      const auto coeffs =
          tmsbell::evolve_coeffs({eval_s, 0.0}, {eval_nbar}, tmsbell::ChannelTime(eval_r));
      const auto point =
          tmsbell::evaluate_bell(coeffs, parse_point(eval_alpha), parse_point(eval_beta));
      std::cout << "B = " << real(point.value) << '\n'
                << "E = " << real(coeffs.e_coef) << "\nF = " << real(coeffs.f_coef)
                << "\nN = " << real(coeffs.bigN) << '\n';
      return kOk;
    }

    if (*maximize) {
      const auto coeffs =
          tmsbell::evolve_coeffs({max_s, 0.0}, {max_nbar}, tmsbell::ChannelTime(max_r));
      const auto res = tmsbell::max_bell(coeffs, max_opt.config());
      std::cout << "b_max = " << real(res.b_max) << "\narg_a = " << real(res.arg_a)
                << "\narg_b = " << real(res.arg_b) << "\nrestarts = " << res.restarts_used
                << "\nconverged = " << (res.converged ? "true" : "false")
                << "\noracle_gap = " << real(res.oracle_gap) << '\n';
      return res.converged ? kOk : kNotConverged;
    }

    if (*sweep) {
      tmsbell::SweepConfig cfg;
      if (!sweep_config.empty()) {
        std::ifstream in(sweep_config);
        if (!in) throw tmsbell::InvalidInput("cannot read config '" + sweep_config + "'");
        cfg = tmsbell::parse_sweep_config(in);
      } else {
        cfg.spec.nbar_values = {0.0};
      }
      // Explicit flags override the file.
      auto& spec = cfg.spec;
      if (!sweep_s.empty()) spec.s_values = tmsbell::parse_real_list(sweep_s);
      if (sweep_config.empty() || sweep->count("--nbar"))
        spec.nbar_values = tmsbell::parse_real_list(sweep_nbar);
      if (sweep_config.empty() || sweep->count("--r-grid"))
        spec.r_grid = tmsbell::RGrid::parse(sweep_grid);
      if (sweep_config.empty()) spec.optimizer = sweep_opt.config();
      if (sweep->count("--restarts")) spec.optimizer.restarts = sweep_opt.restarts;
      if (sweep->count("--seed")) spec.optimizer.rng_seed = sweep_opt.seed;
      if (sweep->count("--search-radius")) spec.optimizer.search_radius = sweep_opt.search_radius;
      if (sweep->count("--max-iterations"))
        spec.optimizer.max_iterations = sweep_opt.max_iterations;
      if (sweep->count("--threads") || sweep_config.empty()) spec.threads = sweep_threads;
      if (sweep_gamma_tau) spec.gamma_tau_column = true;
      if (sweep_out) cfg.out = sweep_out;
      if (sweep_plot) {
        cfg.plot_script_path = sweep_plot;
        spec.emit_plot_script = true;
      }

      const auto rows = tmsbell::run_sweep(spec);
      std::ostringstream csv;
      tmsbell::write_csv(csv, rows, spec.gamma_tau_column);
      if (cfg.out) write_text(*cfg.out, csv.str());
      else std::cout << csv.str();
      if (spec.emit_plot_script && cfg.plot_script_path) {
        write_text(*cfg.plot_script_path, tmsbell::plot_script(cfg.out.value_or("sweep.csv")));
      }
      std::size_t flagged = 0;
      for (const auto& row : rows) flagged += row.converged ? 0 : 1;
      if (flagged > 0) std::cerr << flagged << " row(s) did not converge\n";
      return kOk;
    }

    if (*tau) {
      const auto res = tmsbell::find_tau_c(tau_s, tau_nbar, tau_tol, tau_opt.config());
      if (!res.found) {
        std::cout << "no crossing of |B|_max = 2 in (0, 1)\n";
        return kOk;
      }
      std::cout << "r_c = " << real(res.r_c) << "\ngamma_tau_c = " << real(res.gamma_tau) << '\n';
      return kOk;
    }

    if (*oracle) {
      oracle_opts.scope = tmsbell::parse_oracle_scope(oracle_scope);
      if (!oracle_s.empty()) oracle_opts.s_values = tmsbell::parse_real_list(oracle_s);
      if (!oracle_nbar.empty()) oracle_opts.nbar_values = tmsbell::parse_real_list(oracle_nbar);
      if (!oracle_r.empty()) oracle_opts.r_values = tmsbell::parse_real_list(oracle_r);
      const auto report = tmsbell::run_oracles(oracle_opts);
      report.print(std::cout);
      return report.passed() ? kOk : kOracleFailure;
    }
  } catch (const tmsbell::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const tmsbell::OracleError& e) {
    std::cerr << "oracle error: " << e.what() << '\n';
    return kOracleFailure;
  }
  return kOk;
}
