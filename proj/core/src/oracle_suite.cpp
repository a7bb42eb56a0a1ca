#include "tmsbell/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "tmsbell/bell.hpp"
#include "tmsbell/error.hpp"
#include "tmsbell/fock_oracle.hpp"
#include "tmsbell/verification.hpp"

namespace tmsbell {
namespace {

constexpr double kFockTolerance = 1e-6;
constexpr double kConvolutionTolerance = 1e-6;
constexpr double kNormTolerance = 1e-6;
constexpr double kAmplitudeTolerance = 1e-8;
constexpr double kMaxRandomMagnitude = 1.0;

std::string params(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

std::vector<double> or_default(const std::vector<double>& given, std::vector<double> fallback) {
  return given.empty() ? fallback : given;
}

PhasePoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double mag = kMaxRandomMagnitude * std::sqrt(unit(rng));
  return PhasePoint::polar(mag, 2.0 * kPi * unit(rng));
}

OracleCheck make_check(std::string name, std::string parameters, double worst, double tol) {
  return {std::move(name), std::move(parameters), worst, tol, worst <= tol};
}

void fock_checks(const OracleOptions& opt, OracleReport& report) {
  std::mt19937_64 rng(opt.seed);
  for (double s : or_default(opt.s_values, {0.1, 0.5, 1.0})) {
    const SqueezeSpec squeeze{s, 0.0};
    const int cutoff =
        opt.cutoff > 0 ? opt.cutoff
                       : fock::select_cutoff(squeeze, kMaxRandomMagnitude * kMaxRandomMagnitude);
    const auto state = fock::tmss_amplitudes(squeeze, cutoff);

    double worst = 0.0;
    for (int i = 0; i < opt.fock_points; ++i) {
      const auto alpha = random_point(rng);
      const auto beta = random_point(rng);
      const double parity = fock::joint_parity_expectation(state, alpha, beta).value;
      worst = std::max(worst,
                       std::abs(4.0 / (kPi * kPi) * parity - initial_wigner(squeeze, alpha, beta)));
    }
    report.checks.push_back(make_check("fock.wigner_parity",
                                       params("s=%g cutoff=%g", s, cutoff), worst, kFockTolerance));

    const auto coeffs = evolve_coeffs(squeeze, {0.0}, ChannelTime(0.0));
    const auto best = max_bell(coeffs);
    const PhasePoint alpha{best.arg_a, 0.0};
    const PhasePoint beta{-best.arg_b, 0.0};
    const double gap = std::abs(fock::bell_from_fock(state, alpha, beta).value -
                                bell_function(coeffs, alpha, beta));
    report.checks.push_back(make_check("fock.bell_at_argmax",
                                       params("s=%g a=%.6g b=%.6g", s, best.arg_a, best.arg_b), gap,
                                       kFockTolerance));
  }
}

void convolution_checks(const OracleOptions& opt, OracleReport& report) {
  std::mt19937_64 rng(opt.seed + 1);
  verify::QuadratureSpec quad;
  quad.nodes_per_axis = opt.quad_nodes;
  for (double s : or_default(opt.s_values, {0.1, 0.5, 1.0}))
    for (double nbar : or_default(opt.nbar_values, {0.0, 0.5, 2.0}))
      for (double r : or_default(opt.r_values, {0.3, 0.5, 0.7})) {
        const auto coeffs = evolve_coeffs({s, 0.0}, {nbar}, ChannelTime(r));
        double worst = 0.0;
        for (int i = 0; i < opt.convolution_points; ++i) {
          const auto alpha = random_point(rng);
          const auto beta = random_point(rng);
          const double numeric =
              verify::convolve_numeric({s, 0.0}, {nbar}, ChannelTime(r), alpha, beta, quad);
          worst = std::max(worst, std::abs(numeric - wigner_value(coeffs, alpha, beta)));
        }
        report.checks.push_back(make_check("convolution.closed_form",
                                           params("s=%g nbar=%g r=%g", s, nbar, r), worst,
                                           kConvolutionTolerance));
      }
}

void superposition_checks(const OracleOptions& opt, OracleReport& report) {
  std::mt19937_64 rng(opt.seed + 2);
  verify::QuadratureSpec quad;
  quad.nodes_per_axis = opt.quad_nodes;
  quad.check_refinement = true;
  for (double s : or_default(opt.s_values, {0.1, 0.3, 0.8})) {
    if (s <= 0.0) {
      report.checks.push_back(make_check("superposition.skipped_vacuum", params("s=%g", s), 0.0, 0.0));
      continue;
    }
    const verify::WeightFunction w(s);
    const auto norm = verify::superposition_norm(w, quad);
    report.checks.push_back(make_check("superposition.norm", params("s=%g", s),
                                       std::max(std::abs(norm.value - 1.0), norm.refinement_delta),
                                       kNormTolerance));
    const auto check = verify::superposition_wigner_check(w, random_point(rng), random_point(rng), quad);
    const double amp = *std::max_element(check.amplitude_deviation.begin(),
                                         check.amplitude_deviation.end());
    report.checks.push_back(
        make_check("superposition.fock_amplitudes", params("s=%g n<=2", s), amp, kAmplitudeTolerance));
    report.checks.push_back(make_check("superposition.coherent_overlap", params("s=%g", s),
                                       check.overlap_deviation, kAmplitudeTolerance));
  }
}

void dominance_checks(const OracleOptions& opt, OracleReport& report) {
  std::uint64_t seed = opt.seed + 3;
  for (double s : or_default(opt.s_values, {0.1, 0.5, 1.0}))
    for (double nbar : or_default(opt.nbar_values, {0.0, 0.5, 2.0}))
      for (double r : or_default(opt.r_values, {0.3, 0.5, 0.7})) {
        const auto coeffs = evolve_coeffs({s, 0.0}, {nbar}, ChannelTime(r));
        const auto rep = bell_m_dominates(coeffs, opt.dominance_samples, seed++);
        OracleCheck c = make_check("dominance.bell_m", params("s=%g nbar=%g r=%g", s, nbar, r),
                                   std::max(rep.worst_margin, 0.0), 1e-12);
        c.passed = rep.passed();
        report.checks.push_back(c);
      }
}

}  // namespace

OracleScope parse_oracle_scope(const std::string& name) {
  if (name == "fock") return OracleScope::kFock;
  if (name == "convolution") return OracleScope::kConvolution;
  if (name == "superposition") return OracleScope::kSuperposition;
  if (name == "dominance") return OracleScope::kDominance;
  if (name == "all") return OracleScope::kAll;
  throw InvalidInput("unknown oracle scope '" + name +
                     "' (expected fock, convolution, superposition, dominance or all)");
}

bool OracleReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.passed; });
}

void OracleReport::print(std::ostream& out) const {
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst=%.3e tol=%.1e", c.worst_deviation, c.tolerance);
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << c.parameters << "] " << buf << '\n';
  }
  out << (passed() ? "all oracle checks passed" : "oracle checks FAILED") << '\n';
}

OracleReport run_oracles(const OracleOptions& options) {
  if (options.quad_nodes < 2) throw InvalidInput("quad_nodes must be >= 2");
  if (options.cutoff < 0) throw InvalidInput("cutoff must be >= 0");
  OracleReport report;
  const auto want = [&](OracleScope s) {
    return options.scope == OracleScope::kAll || options.scope == s;
  };
  if (want(OracleScope::kFock)) fock_checks(options, report);
  if (want(OracleScope::kConvolution)) convolution_checks(options, report);
  if (want(OracleScope::kSuperposition)) superposition_checks(options, report);
  if (want(OracleScope::kDominance)) dominance_checks(options, report);
  return report;
}

}  // namespace tmsbell
