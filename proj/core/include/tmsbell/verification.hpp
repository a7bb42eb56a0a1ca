#pragma once

#include <array>
#include <complex>

#include "tmsbell/phase_space.hpp"

namespace tmsbell::verify {

/// Tensor-product Gauss-Hermite settings shared by the quadrature oracles.
struct QuadratureSpec {
  int nodes_per_axis = 32;
  /// Multiplies the curvature of the Gaussian the Hermite weight is matched to.
  double rescale = 1.0;
  /// Also integrate at 2 * nodes_per_axis and report the difference.
  bool check_refinement = false;
  double refinement_tolerance = 1e-6;
};

struct QuadratureEstimate {
  double value = 0.0;
  /// |value(2n) - value(n)|, or 0 when refinement was not requested.
  double refinement_delta = 0.0;
  bool converged = true;
};

/// Gaussian weight of the coherent-state decomposition of the squeezed vacuum,
///   G(alpha) = exp(-((1 - tanh s) / tanh s) |alpha|^2) / (pi sinh s).
/// Undefined for s = 0.
class WeightFunction {
 public:
  explicit WeightFunction(double s);

  double s() const noexcept { return s_; }
  double normalization() const noexcept { return normalization_; }
  double exponent_coef() const noexcept { return exponent_coef_; }

 private:
  double s_;
  double normalization_;
  double exponent_coef_;
};

void validate(const QuadratureSpec& quad);

/// Numerical convolution of the initial Wigner function with two thermal
/// kernels, evaluated at (alpha, beta). Valid for r strictly inside (0, 1);
/// near the endpoints one kernel collapses to a delta and the analytic forms
/// must be used instead (throws OracleError).
double convolve_numeric(const SqueezeSpec& squeeze, const BathSpec& bath, const ChannelTime& time,
                        const PhasePoint& alpha, const PhasePoint& beta,
                        const QuadratureSpec& quad = {});

double weight_value(const WeightFunction& w, const PhasePoint& alpha);

/// <psi|psi> of the coherent-state superposition, from the double integral of
/// G(alpha) G(beta) <beta, beta*|alpha, alpha*>.
QuadratureEstimate superposition_norm(const WeightFunction& w, const QuadratureSpec& quad = {});

/// <n, n|psi> computed from the superposition: integral of G(alpha) e^{-|alpha|^2} |alpha|^{2n} / n!.
QuadratureEstimate superposition_fock_amplitude(const WeightFunction& w, int n,
                                                const QuadratureSpec& quad = {});

/// <a, b|psi> for two-mode coherent states |a>, |b>, computed from the superposition.
std::complex<double> superposition_overlap(const WeightFunction& w, const PhasePoint& a,
                                           const PhasePoint& b, const QuadratureSpec& quad = {});

struct SuperpositionCheck {
  /// |quadrature amplitude - tanh(s)^n sech(s)| for n = 0, 1, 2.
  std::array<double, 3> amplitude_deviation{};
  std::complex<double> overlap_quadrature;
  /// The same overlap summed from the truncated Fock amplitudes.
  std::complex<double> overlap_fock;
  double overlap_deviation = 0.0;

  double worst() const noexcept;
};

/// Consistency of the superposition with the number-basis state: low Fock
/// amplitudes plus the coherent overlap at (alpha, beta).
SuperpositionCheck superposition_wigner_check(const WeightFunction& w, const PhasePoint& alpha,
                                              const PhasePoint& beta,
                                              const QuadratureSpec& quad = {});

}  // namespace tmsbell::verify
