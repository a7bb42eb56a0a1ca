#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tmsbell/phase_space.hpp"

namespace tmsbell::fock {

/// Schmidt amplitudes of the pure two-mode squeezed vacuum,
/// |psi> = sum_n amps[n] |n, n>, truncated at `cutoff` photons per mode.
struct FockAmplitudes {
  int cutoff = 0;
  std::vector<double> amps;
  /// Norm missing from the truncated state: 1 - sum amps^2 = tanh(s)^(2 (cutoff + 1)).
  double deficit = 0.0;
  /// Set when deficit exceeds the tolerance requested from tmss_amplitudes.
  bool tail_warning = false;
};

/// Displaced parity D(alpha) (-1)^n D(alpha)^dagger on the truncated number basis.
struct DisplacedParityMatrix {
  int cutoff = 0;
  Eigen::MatrixXcd entries;
};

enum class Parity { kEven, kOdd };

/// Expectation value together with the bound on what truncation can change.
struct FockEstimate {
  double value = 0.0;
  double truncation_bound = 0.0;
  bool within_tolerance = true;
};

/// Bound on the squared norm of the dropped tail. The expectation error scales
/// with the tail amplitude, its square root, so 1e-14 keeps it near 1e-7.
inline constexpr double kDefaultTailTolerance = 1e-14;

/// Smallest cutoff N with tanh(s)^(2(N+1)) / (1 - tanh(s)^2) below `tolerance`,
/// doubled until max(|alpha|^2, |beta|^2) <= N / 4.
int select_cutoff(const SqueezeSpec& squeeze, double max_displacement_norm2 = 0.0,
                  double tolerance = kDefaultTailTolerance);

FockAmplitudes tmss_amplitudes(const SqueezeSpec& squeeze, int cutoff,
                               double tolerance = kDefaultTailTolerance);

/// <m|D(alpha)|n> for 0 <= m, n <= cutoff.
///
/// Uses the exact recurrence sqrt(n+1) <m|D|n+1> = sqrt(m) <m-1|D|n> - alpha* <m|D|n>,
/// which only involves rows <= m and so carries no truncation error.
/// Throws OracleError when |alpha|^2 exceeds cutoff + 1: the block then misses
/// most of D(alpha)|0>.
Eigen::MatrixXcd displacement_matrix(const PhasePoint& alpha, int cutoff);

/// Uses D(alpha) (-1)^n D(alpha)^dagger = D(2 alpha) (-1)^n, so every entry is exact.
DisplacedParityMatrix displaced_parity_matrix(const PhasePoint& alpha, int cutoff);

/// Projector D(alpha) O_{e,o} D(alpha)^dagger, the intermediate photon-number sum
/// running up to inner_cutoff >= cutoff.
Eigen::MatrixXcd parity_projector(const PhasePoint& alpha, int cutoff, Parity parity,
                                  int inner_cutoff);

/// <psi| Pi_a(alpha) Pi_b(beta) |psi> for the truncated squeezed vacuum, where
/// Pi(x) = Pi_e(x) - Pi_o(x) is the displaced parity of one mode.
FockEstimate joint_parity_expectation(const FockAmplitudes& state, const PhasePoint& alpha,
                                      const PhasePoint& beta);

/// Bell function assembled from four joint parity expectations.
FockEstimate bell_from_fock(const FockAmplitudes& state, const PhasePoint& alpha,
                            const PhasePoint& beta);

}  // namespace tmsbell::fock
