#include "tmsbell/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "tmsbell/error.hpp"

namespace tmsbell {
namespace {

constexpr double kScanStep = 1e-3;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + t + "'");
  }
  if (used != t.size()) throw InvalidInput("not a number: '" + t + "'");
  return value;
}

long long parse_integer(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not an integer: '" + t + "'");
  }
  if (used != t.size()) throw InvalidInput("not an integer: '" + t + "'");
  return value;
}

bool parse_bool(const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw InvalidInput("not a boolean: '" + t + "'");
}

void put_real(std::ostream& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out << buf;
}

double b_max_at(double s, double nbar, double r, const OptimizerConfig& cfg) {
  return max_bell(evolve_coeffs({s, 0.0}, {nbar}, ChannelTime(r)), cfg).b_max;
}

}  // namespace

RGrid RGrid::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw InvalidInput("r grid must look like start:stop:count");
  RGrid grid{parse_real(parts[0]), parse_real(parts[1]), static_cast<int>(parse_integer(parts[2]))};
  return grid;
}

std::vector<double> RGrid::points() const {
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts[i] = start + (stop - start) * i / (count - 1);
  pts.back() = stop;
  return pts;
}

void validate(const SweepSpec& spec) {
  if (spec.s_values.empty()) throw InvalidInput("sweep needs at least one s value");
  if (spec.nbar_values.empty()) throw InvalidInput("sweep needs at least one nbar value");
  if (spec.r_grid.count < 2) throw InvalidInput("r grid count must be >= 2");
  const auto in_unit = [](double r) { return std::isfinite(r) && r >= 0.0 && r <= 1.0; };
  if (!in_unit(spec.r_grid.start) || !in_unit(spec.r_grid.stop))
    throw InvalidInput("r grid must lie within [0, 1]");
  if (spec.threads < 1) throw InvalidInput("threads must be >= 1");
  for (double s : spec.s_values) validate(SqueezeSpec{s, 0.0});
  for (double n : spec.nbar_values) validate(BathSpec{n});
  validate(spec.optimizer);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto rs = spec.r_grid.points();
  std::vector<SweepRow> rows;
  rows.reserve(spec.s_values.size() * spec.nbar_values.size() * rs.size());
  for (double s : spec.s_values)
    for (double nbar : spec.nbar_values)
      for (double r : rs) rows.push_back({s, nbar, r});

  // Each worker fills rows in place, so output order never depends on scheduling.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      auto& row = rows[i];
      const auto res = max_bell(evolve_coeffs({row.s, 0.0}, {row.nbar}, ChannelTime(row.r)),
                                spec.optimizer);
      row.b_max = res.b_max;
      row.arg_a = res.arg_a;
      row.arg_b = res.arg_b;
      row.converged = res.converged;
    }
  };
  const int extra = std::min<int>(spec.threads, static_cast<int>(rows.size())) - 1;
  std::vector<std::jthread> pool;
  for (int i = 0; i < extra; ++i) pool.emplace_back(work);
  work();
  pool.clear();
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool gamma_tau_column) {
  out << "s,nbar,r,b_max,arg_a,arg_b,converged";
  if (gamma_tau_column) out << ",gamma_tau";
  out << '\n';
  for (const auto& row : rows) {
    for (double x : {row.s, row.nbar, row.r, row.b_max, row.arg_a, row.arg_b}) {
      put_real(out, x);
      out << ',';
    }
    out << (row.converged ? 1 : 0);
    if (gamma_tau_column) {
      out << ',';
      put_real(out, ChannelTime(row.r).gamma_tau());
    }
    out << '\n';
  }
}

std::string plot_script(const std::string& csv_path) {
  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
        "\"\"\"Plot |B|_max against r(tau) from a tmsbell sweep CSV.\"\"\"\n"
        "import csv\n"
        "import sys\n"
        "from collections import defaultdict\n\n"
        "import matplotlib.pyplot as plt\n\n"
        "path = sys.argv[1] if len(sys.argv) > 1 else "
     << '"' << csv_path << '"'
     << "\n"
        "curves = defaultdict(list)\n"
        "with open(path, newline='') as fh:\n"
        "    for row in csv.DictReader(fh):\n"
        "        key = (float(row['s']), float(row['nbar']))\n"
        "        curves[key].append((float(row['r']), float(row['b_max'])))\n\n"
        "fig, ax = plt.subplots(figsize=(6, 4))\n"
        "for (s, nbar), pts in sorted(curves.items()):\n"
        "    pts.sort()\n"
        "    ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f's={s:g}, nbar={nbar:g}')\n"
        "ax.axhline(2.0, color='grey', lw=0.8, ls=':')\n"
        "ax.set_xlabel('r(tau) = sqrt(1 - exp(-gamma tau))')\n"
        "ax.set_ylabel('|B|_max')\n"
        "ax.legend()\n"
        "fig.tight_layout()\n"
        "out = path.rsplit('.', 1)[0] + '.png'\n"
        "fig.savefig(out, dpi=150)\n"
        "print('wrote', out)\n";
  return py.str();
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (trim(item).empty()) throw InvalidInput("empty entry in list '" + text + "'");
    values.push_back(parse_real(item));
  }
  if (values.empty()) throw InvalidInput("empty list");
  return values;
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "s") cfg.spec.s_values = parse_real_list(value);
      else if (key == "nbar") cfg.spec.nbar_values = parse_real_list(value);
      else if (key == "r_grid") cfg.spec.r_grid = RGrid::parse(value);
      else if (key == "restarts") cfg.spec.optimizer.restarts = static_cast<int>(parse_integer(value));
      else if (key == "seed") cfg.spec.optimizer.rng_seed = static_cast<std::uint64_t>(parse_integer(value));
      else if (key == "search_radius") cfg.spec.optimizer.search_radius = parse_real(value);
      else if (key == "max_iterations") cfg.spec.optimizer.max_iterations = static_cast<int>(parse_integer(value));
      else if (key == "step_tolerance") cfg.spec.optimizer.step_tolerance = parse_real(value);
      else if (key == "value_tolerance") cfg.spec.optimizer.value_tolerance = parse_real(value);
      else if (key == "threads") cfg.spec.threads = static_cast<int>(parse_integer(value));
      else if (key == "gamma_tau") cfg.spec.gamma_tau_column = parse_bool(value);
      else if (key == "out") cfg.out = value;
      else if (key == "plot_script") {
        cfg.plot_script_path = value;
        cfg.spec.emit_plot_script = true;
      } else {
        throw InvalidInput("unknown key '" + key + "'");
      }
    } catch (const InvalidInput& e) {
      throw InvalidInput("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

TauCResult find_tau_c(double s, double nbar, double tol, const OptimizerConfig& cfg) {
  validate(SqueezeSpec{s, 0.0});
  validate(BathSpec{nbar});
  if (!(s > 0.0)) throw InvalidInput("tau_c needs s > 0 (the vacuum is never nonlocal)");
  if (!(tol > 0.0)) throw InvalidInput("tau_c tolerance must be > 0");
  OptimizerConfig fast = cfg;
  fast.oracle_grid_n = 0;

  TauCResult result;
  const int steps = static_cast<int>(std::lround(1.0 / kScanStep));
  double lo = 0.0;
  double hi = -1.0;
  for (int k = 1; k < steps; ++k) {
    const double r = k * kScanStep;
    if (b_max_at(s, nbar, r, fast) <= 2.0) {
      hi = r;
      break;
    }
    lo = r;
  }
  if (hi < 0.0) return result;

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (b_max_at(s, nbar, mid, fast) <= 2.0 ? hi : lo) = mid;
  }
  result.found = true;
  result.r_c = 0.5 * (lo + hi);
  result.gamma_tau = ChannelTime(result.r_c).gamma_tau();
  return result;
}

}  // namespace tmsbell
