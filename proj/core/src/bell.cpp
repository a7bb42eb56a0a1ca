#include "tmsbell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "tmsbell/error.hpp"

namespace tmsbell {
namespace {

constexpr double kDominanceSlack = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr double kMaxStep = 16.0;

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation so results are portable.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// bell_m in width-scaled coordinates u = sqrt(E) a, v = sqrt(E) b.
struct ScaledBell {
  double prefactor;  // pi^2 N / 4
  double kappa;      // F / E

  double value(double u, double v) const {
    const double eu = std::exp(-u * u);
    const double ev = std::exp(-v * v);
    const double joint = std::exp(-(u * u + v * v) - 2.0 * kappa * u * v);
    return prefactor * (1.0 + eu + (ev - joint));
  }

  std::array<double, 2> gradient(double u, double v) const {
    const double eu = std::exp(-u * u);
    const double ev = std::exp(-v * v);
    const double joint = std::exp(-(u * u + v * v) - 2.0 * kappa * u * v);
    return {prefactor * (-2.0 * u * eu + 2.0 * (u + kappa * v) * joint),
            prefactor * (-2.0 * v * ev + 2.0 * (v + kappa * u) * joint)};
  }

  // {f_uu, f_uv, f_vv}
  std::array<double, 3> hessian(double u, double v) const {
    const double eu = std::exp(-u * u);
    const double ev = std::exp(-v * v);
    const double joint = std::exp(-(u * u + v * v) - 2.0 * kappa * u * v);
    const double pu = u + kappa * v;
    const double pv = v + kappa * u;
    return {prefactor * ((4.0 * u * u - 2.0) * eu - (4.0 * pu * pu - 2.0) * joint),
            -prefactor * (4.0 * pu * pv - 2.0 * kappa) * joint,
            prefactor * ((4.0 * v * v - 2.0) * ev - (4.0 * pv * pv - 2.0) * joint)};
  }
};

// Saddle-free Newton direction on the free coordinates: the gradient component
// along each Hessian eigenvector is divided by max(|lambda|, floor). Where the
// surface is concave this is the Newton step.
std::array<double, 2> ascent_direction(const std::array<double, 2>& g,
                                       const std::array<double, 3>& h, bool free_u, bool free_v,
                                       double floor) {
  const auto divide = [floor](double x, double lambda) {
    return x / std::max(std::abs(lambda), floor);
  };
  if (free_u && free_v) {
    const double mid = 0.5 * (h[0] + h[2]);
    const double rad = std::hypot(0.5 * (h[0] - h[2]), h[1]);
    const double lambda1 = mid + rad;
    double e1u = h[1], e1v = lambda1 - h[0];
    const double alt_u = lambda1 - h[2], alt_v = h[1];
    if (std::hypot(alt_u, alt_v) > std::hypot(e1u, e1v)) e1u = alt_u, e1v = alt_v;
    const double n1 = std::hypot(e1u, e1v);
    if (n1 == 0.0) return {divide(g[0], h[0]), divide(g[1], h[2])};
    e1u /= n1;
    e1v /= n1;
    // Second eigenvector is orthogonal, eigenvalue mid - rad.
    const double c1 = divide(g[0] * e1u + g[1] * e1v, lambda1);
    const double c2 = divide(-g[0] * e1v + g[1] * e1u, mid - rad);
    return {c1 * e1u - c2 * e1v, c1 * e1v + c2 * e1u};
  }
  return {free_u ? divide(g[0], h[0]) : 0.0, free_v ? divide(g[1], h[2]) : 0.0};
}

struct LocalResult {
  double u = 0.0;
  double v = 0.0;
  double value = 0.0;
  bool converged = false;
};

LocalResult ascend(const ScaledBell& f, double u, double v, const OptimizerConfig& cfg) {
  LocalResult out{u, v, f.value(u, v), false};
  // Trust length for the step; plateaus of bell_m have tiny gradients and
  // curvatures, so steps are bounded by length rather than by |g|.
  double reach = 0.5;
  const double floor = 1e-8 * f.prefactor;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    auto g = f.gradient(out.u, out.v);
    // Components pushing into the a >= 0, b >= 0 walls are inactive.
    const bool free_u = !(out.u <= 0.0 && g[0] <= 0.0);
    const bool free_v = !(out.v <= 0.0 && g[1] <= 0.0);
    if (!free_u) g[0] = 0.0;
    if (!free_v) g[1] = 0.0;
    if (std::hypot(g[0], g[1]) < cfg.step_tolerance) {
      out.converged = true;
      return out;
    }

    const auto d = ascent_direction(g, f.hessian(out.u, out.v), free_u, free_v, floor);
    double trial_step = std::min(1.0, reach / std::hypot(d[0], d[1]));
    double nu = 0.0, nv = 0.0, nval = 0.0;
    bool accepted = false;
    while (trial_step > 1e-30) {
      nu = std::max(0.0, out.u + trial_step * d[0]);
      nv = std::max(0.0, out.v + trial_step * d[1]);
      nval = f.value(nu, nv);
      const double predicted = g[0] * (nu - out.u) + g[1] * (nv - out.v);
      if (nval >= out.value + kArmijo * predicted) {
        accepted = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!accepted) {
      // No ascent direction survives rounding: we sit on the maximum to machine precision.
      out.converged = true;
      return out;
    }

    const double moved = std::hypot(nu - out.u, nv - out.v);
    const double gained = nval - out.value;
    out.u = nu;
    out.v = nv;
    out.value = nval;
    reach = std::min(std::max(2.0 * moved, reach), kMaxStep);
    if (moved < cfg.step_tolerance && gained < cfg.value_tolerance) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace

void validate(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw InvalidInput("optimizer restarts must be >= 1");
  if (cfg.max_iterations < 1) throw InvalidInput("optimizer max_iterations must be >= 1");
  if (!(cfg.step_tolerance > 0.0) || !(cfg.value_tolerance > 0.0))
    throw InvalidInput("optimizer tolerances must be > 0");
  if (!(cfg.search_radius > 0.0) || !std::isfinite(cfg.search_radius))
    throw InvalidInput("optimizer search_radius must be a positive finite number");
  if (cfg.oracle_grid_n != 0 && cfg.oracle_grid_n < 2)
    throw InvalidInput("oracle_grid_n must be 0 (disabled) or >= 2");
}

double bell_function(const GaussianCoeffs& coeffs, const PhasePoint& alpha,
                     const PhasePoint& beta) {
  validate(coeffs);
  const PhasePoint origin{};
  const double bracket = wigner_value(coeffs, origin, origin) +
                         wigner_value(coeffs, alpha, origin) +
                         wigner_value(coeffs, origin, beta) - wigner_value(coeffs, alpha, beta);
  return kPi * kPi / 4.0 * bracket;
}

BellPoint evaluate_bell(const GaussianCoeffs& coeffs, const PhasePoint& alpha,
                        const PhasePoint& beta) {
  return {alpha, beta, bell_function(coeffs, alpha, beta)};
}

double bell_m(const GaussianCoeffs& coeffs, double a, double b) {
  validate(coeffs);
  if (!(a >= 0.0) || !(b >= 0.0)) throw InvalidInput("bell_m needs magnitudes a, b >= 0");
  const double root_e = std::sqrt(coeffs.e_coef);
  const ScaledBell f{kPi * kPi * coeffs.bigN / 4.0, coeffs.f_coef / coeffs.e_coef};
  return f.value(root_e * a, root_e * b);
}

std::array<double, 2> bell_m_gradient(const GaussianCoeffs& coeffs, double a, double b) {
  validate(coeffs);
  if (!(a >= 0.0) || !(b >= 0.0))
    throw InvalidInput("bell_m_gradient needs magnitudes a, b >= 0");
  const double root_e = std::sqrt(coeffs.e_coef);
  const ScaledBell f{kPi * kPi * coeffs.bigN / 4.0, coeffs.f_coef / coeffs.e_coef};
  auto g = f.gradient(root_e * a, root_e * b);
  return {g[0] * root_e, g[1] * root_e};
}

BellResult max_bell(const GaussianCoeffs& coeffs, const OptimizerConfig& cfg) {
  validate(coeffs);
  validate(cfg);
  const double root_e = std::sqrt(coeffs.e_coef);
  const ScaledBell f{kPi * kPi * coeffs.bigN / 4.0, coeffs.f_coef / coeffs.e_coef};

  std::mt19937_64 rng(cfg.rng_seed);
  std::vector<LocalResult> candidates;
  candidates.reserve(static_cast<std::size_t>(cfg.restarts) + 1);
  candidates.push_back(ascend(f, 0.0, 0.0, cfg));
  for (int i = 0; i < cfg.restarts; ++i) {
    const double u0 = cfg.search_radius * unit_uniform(rng);
    const double v0 = cfg.search_radius * unit_uniform(rng);
    candidates.push_back(ascend(f, u0, v0, cfg));
  }

  // Canonical orientation a <= b, then best value; near-ties go to the
  // lexicographically smaller point so the answer does not depend on restart order.
  for (auto& c : candidates) {
    if (c.u > c.v) std::swap(c.u, c.v);
  }
  LocalResult best = candidates.front();
  for (const auto& c : candidates) {
    const double tie = 1e-14 * std::max(1.0, std::abs(best.value));
    const bool better = c.value > best.value + tie;
    const bool tied = std::abs(c.value - best.value) <= tie &&
                      (c.u < best.u || (c.u == best.u && c.v < best.v));
    if (better || tied) best = c;
  }

  BellResult result;
  result.b_max = best.value;
  result.arg_a = best.u / root_e;
  result.arg_b = best.v / root_e;
  result.restarts_used = cfg.restarts;
  result.converged = best.converged;
  result.oracle_gap = std::numeric_limits<double>::quiet_NaN();
  if (cfg.oracle_grid_n >= 2) {
    result.oracle_gap =
        result.b_max - grid_oracle(coeffs, cfg.search_radius / root_e, cfg.oracle_grid_n);
  }
  return result;
}

double grid_oracle(const GaussianCoeffs& coeffs, double grid_max, int grid_n) {
  validate(coeffs);
  if (grid_n < 2) throw InvalidInput("grid_oracle needs grid_n >= 2");
  if (!(grid_max > 0.0) || !std::isfinite(grid_max))
    throw InvalidInput("grid_oracle needs a positive finite grid_max");
  double best = -std::numeric_limits<double>::infinity();
  const double h = grid_max / (grid_n - 1);
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      best = std::max(best, bell_m(coeffs, i * h, j * h));
    }
  }
  return best;
}

DominanceReport bell_m_dominates(const GaussianCoeffs& coeffs, int samples,
                                 std::uint64_t rng_seed) {
  validate(coeffs);
  if (samples < 1) throw InvalidInput("bell_m_dominates needs samples >= 1");
  // Magnitudes up to 4 Wigner widths; beyond that every term is below exp(-16).
  const double radius = 4.0 / std::sqrt(coeffs.e_coef);
  std::mt19937_64 rng(rng_seed);
  DominanceReport report;
  report.samples = samples;
  report.worst_margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double a = radius * unit_uniform(rng);
    const double b = radius * unit_uniform(rng);
    const auto alpha = PhasePoint::polar(a, 2.0 * kPi * unit_uniform(rng));
    const auto beta = PhasePoint::polar(b, 2.0 * kPi * unit_uniform(rng));
    const double margin = bell_function(coeffs, alpha, beta) - bell_m(coeffs, a, b);
    if (margin > report.worst_margin) {
      report.worst_margin = margin;
      report.worst_alpha = alpha;
      report.worst_beta = beta;
    }
    if (margin > kDominanceSlack) ++report.violations;
  }
  return report;
}

}  // namespace tmsbell
