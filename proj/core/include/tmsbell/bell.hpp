#pragma once

#include <array>
#include <cstdint>

#include "tmsbell/phase_space.hpp"

namespace tmsbell {

/// Bell function evaluated at one pair of displacement settings.
struct BellPoint {
  PhasePoint alpha;
  PhasePoint beta;
  double value = 0.0;
};

/// Settings for the multi-start gradient ascent in max_bell.
///
/// Distances inside the optimizer are measured in units of the Wigner width
/// 1/sqrt(E), so `search_radius` = 3 covers the region where the Bell function
/// differs from its far-field value by more than exp(-9), whatever E is.
struct OptimizerConfig {
  int restarts = 16;
  double step_tolerance = 1e-10;
  double value_tolerance = 1e-10;
  int max_iterations = 20000;
  double search_radius = 3.0;
  std::uint64_t rng_seed = 20011;
  /// Lattice size for the oracle_gap diagnostic (0 disables it).
  int oracle_grid_n = 41;
};

struct BellResult {
  double b_max = 0.0;
  double arg_a = 0.0;  ///< |alpha| at the maximum, canonicalized so arg_a <= arg_b
  double arg_b = 0.0;  ///< |beta| at the maximum
  int restarts_used = 0;
  /// Convergence of the ascent that produced b_max. The origin start is a
  /// stationary point, so "some restart converged" would always hold.
  bool converged = false;
  double oracle_gap = 0.0;  ///< b_max minus the grid-oracle best; NaN when disabled
};

struct DominanceReport {
  int samples = 0;
  int violations = 0;
  /// Largest observed bell_function - bell_m; non-positive when every sample passes.
  double worst_margin = 0.0;
  PhasePoint worst_alpha;
  PhasePoint worst_beta;

  bool passed() const noexcept { return violations == 0; }
};

void validate(const OptimizerConfig& cfg);

/// B(alpha, beta) = (pi^2/4) [W(0,0) + W(alpha,0) + W(0,beta) - W(alpha,beta)].
double bell_function(const GaussianCoeffs& coeffs, const PhasePoint& alpha,
                     const PhasePoint& beta);

BellPoint evaluate_bell(const GaussianCoeffs& coeffs, const PhasePoint& alpha,
                        const PhasePoint& beta);

/// Bell function on the section where the phases of alpha and beta add up to pi;
/// depends on the magnitudes a = |alpha|, b = |beta| only.
double bell_m(const GaussianCoeffs& coeffs, double a, double b);

/// Analytic gradient of bell_m with respect to (a, b).
std::array<double, 2> bell_m_gradient(const GaussianCoeffs& coeffs, double a, double b);

/// Global maximum of |B| by projected Newton ascent on bell_m from
/// cfg.restarts random starting points plus the origin.
BellResult max_bell(const GaussianCoeffs& coeffs, const OptimizerConfig& cfg = {});

/// Best bell_m over a grid_n x grid_n lattice on [0, grid_max]^2, endpoints included.
double grid_oracle(const GaussianCoeffs& coeffs, double grid_max, int grid_n);

/// Checks bell_function <= bell_m(|alpha|, |beta|) + 1e-12 at random fully complex settings.
DominanceReport bell_m_dominates(const GaussianCoeffs& coeffs, int samples,
                                 std::uint64_t rng_seed);

}  // namespace tmsbell
