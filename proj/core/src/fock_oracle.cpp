#include "tmsbell/fock_oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tmsbell/error.hpp"

namespace tmsbell::fock {
namespace {

using cplx = std::complex<double>;

void require_phi_zero(const SqueezeSpec& squeeze) {
  validate(squeeze);
  if (squeeze.phi != 0.0) throw InvalidInput("Fock oracle supports phi = 0 only");
}

// |<psi|O|psi> - <psi_N|O|psi_N>| <= 2 ||tail|| + ||tail||^2 for ||O|| <= 1,
// applied once per displaced-parity factor.
double expectation_bound(double deficit) {
  const double tail = std::sqrt(std::max(deficit, 0.0));
  return 2.0 * tail + deficit;
}

}  // namespace

int select_cutoff(const SqueezeSpec& squeeze, double max_displacement_norm2, double tolerance) {
  require_phi_zero(squeeze);
  if (!(tolerance > 0.0)) throw InvalidInput("tail tolerance must be > 0");
  if (!(max_displacement_norm2 >= 0.0) || !std::isfinite(max_displacement_norm2))
    throw InvalidInput("displacement norm must be finite and >= 0");
  const double x = std::tanh(squeeze.s) * std::tanh(squeeze.s);
  int n = 0;
  if (x > 0.0) {
    // tanh^(2(N+1)) / (1 - tanh^2) < tol  <=>  (N+1) ln x < ln(tol (1 - x))
    const double needed = std::log(tolerance * (1.0 - x)) / std::log(x);
    n = std::max(0, static_cast<int>(std::ceil(needed)) - 1);
    while (std::pow(x, n + 1) / (1.0 - x) >= tolerance) ++n;
  }
  n = std::max(n, 1);
  while (max_displacement_norm2 > n / 4.0) n *= 2;
  return n;
}

FockAmplitudes tmss_amplitudes(const SqueezeSpec& squeeze, int cutoff, double tolerance) {
  require_phi_zero(squeeze);
  if (cutoff < 0) throw InvalidInput("Fock cutoff must be >= 0");
  FockAmplitudes state;
  state.cutoff = cutoff;
  state.amps.resize(static_cast<std::size_t>(cutoff) + 1);
  const double th = std::tanh(squeeze.s);
  double amp = 1.0 / std::cosh(squeeze.s);
  for (auto& a : state.amps) {
    a = amp;
    amp *= th;
  }
  state.deficit = std::pow(th * th, cutoff + 1);
  state.tail_warning = state.deficit > tolerance;
  return state;
}

Eigen::MatrixXcd displacement_matrix(const PhasePoint& alpha, int cutoff) {
  validate(alpha);
  if (cutoff < 0) throw InvalidInput("Fock cutoff must be >= 0");
  if (alpha.norm2() > cutoff + 1.0)
    throw OracleError("displacement |alpha|^2 = " + std::to_string(alpha.norm2()) +
                      " too large for cutoff " + std::to_string(cutoff) +
                      "; increase the cutoff");
  const int dim = cutoff + 1;
  const cplx a = alpha.value();
  const double x = alpha.norm2();
  Eigen::MatrixXcd d(dim, dim);

  // <n+k|D|n> = <k|D|0> h_n and <n|D|n+k> = <k|D(-conj alpha)|0> h_n, where
  // h_n = sqrt(k! n!/(n+k)!) L_n^(k)(x). The degree recurrence for h is run
  // along each diagonal; recurring across columns instead loses ~1e-8 near m = n = 40.
  std::vector<cplx> lower(dim), upper(dim);
  lower[0] = upper[0] = std::exp(-x / 2.0);
  for (int k = 1; k < dim; ++k) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(k));
    lower[k] = lower[k - 1] * a * inv;
    upper[k] = upper[k - 1] * (-std::conj(a)) * inv;
  }
  for (int k = 0; k < dim; ++k) {
    double prev = 0.0, h = 1.0;
    for (int n = 0; n + k < dim; ++n) {
      d(n + k, n) = lower[k] * h;
      if (k > 0) d(n, n + k) = upper[k] * h;
      const double next = ((2.0 * n + 1.0 + k - x) * h -
                           std::sqrt(static_cast<double>(n) * (n + k)) * prev) /
                          std::sqrt((n + 1.0) * (n + k + 1.0));
      prev = h;
      h = next;
    }
  }
  return d;
}

DisplacedParityMatrix displaced_parity_matrix(const PhasePoint& alpha, int cutoff) {
  validate(alpha);
  DisplacedParityMatrix out;
  out.cutoff = cutoff;
  out.entries = displacement_matrix(PhasePoint{2.0 * alpha.re, 2.0 * alpha.im}, cutoff);
  for (int n = 1; n <= cutoff; n += 2) out.entries.col(n) *= -1.0;
  return out;
}

Eigen::MatrixXcd parity_projector(const PhasePoint& alpha, int cutoff, Parity parity,
                                  int inner_cutoff) {
  if (inner_cutoff < cutoff) throw InvalidInput("inner_cutoff must be >= cutoff");
  const Eigen::MatrixXcd d = displacement_matrix(alpha, inner_cutoff);
  const int first = parity == Parity::kEven ? 0 : 1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int k = first; k <= inner_cutoff; k += 2) {
    const auto col = d.col(k).head(cutoff + 1);
    out += col * col.adjoint();
  }
  return out;
}

FockEstimate joint_parity_expectation(const FockAmplitudes& state, const PhasePoint& alpha,
                                      const PhasePoint& beta) {
  if (state.amps.size() != static_cast<std::size_t>(state.cutoff) + 1)
    throw InvalidInput("FockAmplitudes size does not match its cutoff");
  const auto pa = displaced_parity_matrix(alpha, state.cutoff).entries;
  const auto pb = displaced_parity_matrix(beta, state.cutoff).entries;
  // <psi|Pi_a Pi_b|psi> = sum_{m,n} c_m c_n <m|Pi_a|n> <m|Pi_b|n>
  cplx total = 0.0;
  for (int m = 0; m <= state.cutoff; ++m) {
    for (int n = 0; n <= state.cutoff; ++n) {
      total += state.amps[m] * state.amps[n] * pa(m, n) * pb(m, n);
    }
  }
  FockEstimate est;
  est.value = total.real();
  est.truncation_bound = expectation_bound(state.deficit);
  est.within_tolerance = !state.tail_warning;
  return est;
}

FockEstimate bell_from_fock(const FockAmplitudes& state, const PhasePoint& alpha,
                            const PhasePoint& beta) {
  const PhasePoint origin{};
  const auto e00 = joint_parity_expectation(state, origin, origin);
  const auto ea0 = joint_parity_expectation(state, alpha, origin);
  const auto e0b = joint_parity_expectation(state, origin, beta);
  const auto eab = joint_parity_expectation(state, alpha, beta);
  FockEstimate est;
  est.value = e00.value + ea0.value + e0b.value - eab.value;
  est.truncation_bound = 4.0 * e00.truncation_bound;
  est.within_tolerance = e00.within_tolerance;
  return est;
}

}  // namespace tmsbell::fock
