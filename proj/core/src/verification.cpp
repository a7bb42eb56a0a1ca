#include "tmsbell/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tmsbell/error.hpp"
#include "tmsbell/fock_oracle.hpp"
#include "tmsbell/quadrature.hpp"

namespace tmsbell::verify {
namespace {

using quad::AxisRule;
using quad::GaussianFactor;

constexpr double kEndpointMargin = 1e-4;
constexpr int kMaxNodes = 128;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

template <typename Integrand>
double tensor4(const std::array<AxisRule, 4>& axes, Integrand&& f) {
  double total = 0.0;
  for (std::size_t i = 0; i < axes[0].x.size(); ++i) {
    for (std::size_t j = 0; j < axes[1].x.size(); ++j) {
      const double wij = axes[0].w[i] * axes[1].w[j];
      double inner = 0.0;
      for (std::size_t k = 0; k < axes[2].x.size(); ++k) {
        for (std::size_t l = 0; l < axes[3].x.size(); ++l) {
          inner += axes[2].w[k] * axes[3].w[l] *
                   f(axes[0].x[i], axes[1].x[j], axes[2].x[k], axes[3].x[l]);
        }
      }
      total += wij * inner;
    }
  }
  return total;
}

AxisRule axis(const quad::GaussHermiteRule& rule, std::initializer_list<GaussianFactor> factors,
              double rescale) {
  return quad::matched_axis_rule(rule, std::span(factors.begin(), factors.size()), rescale);
}

double norm_at(const WeightFunction& w, int nodes, double rescale) {
  const quad::GaussHermiteRule rule(nodes);
  const double c = w.exponent_coef();
  // p = (alpha + beta)/sqrt2, q = (alpha - beta)/sqrt2 per quadrature; the overlap
  // exp(-|alpha - beta|^2) only confines q.
  const AxisRule p = axis(rule, {{c, 0.0}, {0.0, 0.0}}, rescale);
  const AxisRule q = axis(rule, {{c, 0.0}, {2.0, 0.0}}, rescale);
  return tensor4({p, q, p, q}, [&](double px, double qx, double py, double qy) {
    const PhasePoint alpha{(px + qx) * kInvSqrt2, (py + qy) * kInvSqrt2};
    const PhasePoint beta{(px - qx) * kInvSqrt2, (py - qy) * kInvSqrt2};
    const double overlap = std::exp(-alpha.norm2() - beta.norm2() +
                                    2.0 * (alpha.re * beta.re + alpha.im * beta.im));
    return weight_value(w, alpha) * weight_value(w, beta) * overlap;
  });
}

double amplitude_at(const WeightFunction& w, int n, int nodes, double rescale) {
  const quad::GaussHermiteRule rule(nodes);
  const AxisRule ax = axis(rule, {{w.exponent_coef(), 0.0}, {1.0, 0.0}}, rescale);
  const double inv_fact = 1.0 / std::tgamma(n + 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < ax.x.size(); ++i) {
    for (std::size_t j = 0; j < ax.x.size(); ++j) {
      const PhasePoint alpha{ax.x[i], ax.x[j]};
      const double r2 = alpha.norm2();
      total += ax.w[i] * ax.w[j] * weight_value(w, alpha) * std::exp(-r2) * std::pow(r2, n) *
               inv_fact;
    }
  }
  return total;
}

template <typename F>
QuadratureEstimate with_refinement(const QuadratureSpec& q, F&& at_order) {
  QuadratureEstimate est;
  est.value = at_order(q.nodes_per_axis);
  if (q.check_refinement) {
    est.refinement_delta = std::abs(at_order(std::min(2 * q.nodes_per_axis, kMaxNodes)) - est.value);
    est.converged = est.refinement_delta < q.refinement_tolerance;
  }
  return est;
}

}  // namespace

WeightFunction::WeightFunction(double s) : s_(s) {
  if (!std::isfinite(s) || s > kMaxSqueeze) throw InvalidInput("weight function needs finite s <= 20");
  if (!(s > 0.0))
    throw InvalidInput("coherent-state decomposition is undefined for s = 0 (vacuum)");
  normalization_ = 1.0 / (kPi * std::sinh(s));
  const double th = std::tanh(s);
  exponent_coef_ = (1.0 - th) / th;
}

void validate(const QuadratureSpec& quad) {
  if (quad.nodes_per_axis < 2 || quad.nodes_per_axis > kMaxNodes)
    throw InvalidInput("nodes_per_axis must lie in [2, 128]");
  if (!(quad.rescale > 0.0) || !std::isfinite(quad.rescale))
    throw InvalidInput("quadrature rescale must be a positive finite number");
  if (!(quad.refinement_tolerance > 0.0)) throw InvalidInput("refinement_tolerance must be > 0");
}

double convolve_numeric(const SqueezeSpec& squeeze, const BathSpec& bath, const ChannelTime& time,
                        const PhasePoint& alpha, const PhasePoint& beta,
                        const QuadratureSpec& quad) {
  validate(squeeze);
  validate(bath);
  validate(alpha);
  validate(beta);
  validate(quad);
  if (squeeze.phi != 0.0) throw InvalidInput("convolution oracle supports phi = 0 only");
  const double r = time.r();
  const double t = time.t();
  if (r < kEndpointMargin || t < kEndpointMargin)
    throw OracleError("r too close to 0 or 1 for the convolution oracle; use the analytic endpoint");

  // Rotated coordinates p = (zeta + eta)/sqrt2, q = (zeta - eta)/sqrt2 (per
  // quadrature) diagonalize the squeezed-vacuum factor. Along each axis the
  // integrand is then a thermal Gaussian times a shifted signal Gaussian.
  const double width = 1.0 + 2.0 * bath.nbar;
  const double thermal = 2.0 / width;
  const double ratio = r * r / (t * t);
  const double wide = 2.0 * std::exp(-2.0 * squeeze.s) * ratio;
  const double narrow = 2.0 * std::exp(2.0 * squeeze.s) * ratio;
  const double shift = kInvSqrt2 / r;

  const quad::GaussHermiteRule rule(quad.nodes_per_axis);
  const std::array<AxisRule, 4> axes{
      axis(rule, {{thermal, 0.0}, {wide, (alpha.re + beta.re) * shift}}, quad.rescale),
      axis(rule, {{thermal, 0.0}, {narrow, (alpha.re - beta.re) * shift}}, quad.rescale),
      axis(rule, {{thermal, 0.0}, {narrow, (alpha.im + beta.im) * shift}}, quad.rescale),
      axis(rule, {{thermal, 0.0}, {wide, (alpha.im - beta.im) * shift}}, quad.rescale),
  };

  const double inv_t = 1.0 / t;
  const double jacobian = std::pow(inv_t, 4);
  return jacobian * tensor4(axes, [&](double px, double qx, double py, double qy) {
           const PhasePoint zeta{(px + qx) * kInvSqrt2, (py + qy) * kInvSqrt2};
           const PhasePoint eta{(px - qx) * kInvSqrt2, (py - qy) * kInvSqrt2};
           const PhasePoint a{(alpha.re - r * zeta.re) * inv_t, (alpha.im - r * zeta.im) * inv_t};
           const PhasePoint b{(beta.re - r * eta.re) * inv_t, (beta.im - r * eta.im) * inv_t};
           return thermal_wigner(bath, zeta) * thermal_wigner(bath, eta) *
                  initial_wigner(squeeze, a, b);
         });
}

double weight_value(const WeightFunction& w, const PhasePoint& alpha) {
  return w.normalization() * std::exp(-w.exponent_coef() * alpha.norm2());
}

QuadratureEstimate superposition_norm(const WeightFunction& w, const QuadratureSpec& quad) {
  validate(quad);
  return with_refinement(quad, [&](int n) { return norm_at(w, n, quad.rescale); });
}

QuadratureEstimate superposition_fock_amplitude(const WeightFunction& w, int n,
                                                const QuadratureSpec& quad) {
  validate(quad);
  if (n < 0) throw InvalidInput("photon number must be >= 0");
  return with_refinement(quad, [&](int nodes) { return amplitude_at(w, n, nodes, quad.rescale); });
}

std::complex<double> superposition_overlap(const WeightFunction& w, const PhasePoint& a,
                                           const PhasePoint& b, const QuadratureSpec& quad) {
  validate(quad);
  validate(a);
  validate(b);
  const quad::GaussHermiteRule rule(quad.nodes_per_axis);
  const double c = w.exponent_coef();
  // |<a|alpha><b|alpha*>| peaks at alpha = (a_re + b_re, a_im - b_im) / 2.
  const AxisRule ax = axis(rule, {{c, 0.0}, {1.0, 0.5 * (a.re + b.re)}}, quad.rescale);
  const AxisRule ay = axis(rule, {{c, 0.0}, {1.0, 0.5 * (a.im - b.im)}}, quad.rescale);
  const std::complex<double> a_conj = std::conj(a.value());
  const std::complex<double> b_conj = std::conj(b.value());
  std::complex<double> total = 0.0;
  for (std::size_t i = 0; i < ax.x.size(); ++i) {
    for (std::size_t j = 0; j < ay.x.size(); ++j) {
      const PhasePoint alpha{ax.x[i], ay.x[j]};
      const std::complex<double> z = alpha.value();
      const std::complex<double> exponent =
          -0.5 * (a.norm2() + b.norm2()) - alpha.norm2() + a_conj * z + b_conj * std::conj(z);
      total += ax.w[i] * ay.w[j] * weight_value(w, alpha) * std::exp(exponent);
    }
  }
  return total;
}

double SuperpositionCheck::worst() const noexcept {
  double worst = overlap_deviation;
  for (double d : amplitude_deviation) worst = std::max(worst, d);
  return worst;
}

SuperpositionCheck superposition_wigner_check(const WeightFunction& w, const PhasePoint& alpha,
                                              const PhasePoint& beta,
                                              const QuadratureSpec& quad) {
  SuperpositionCheck check;
  const SqueezeSpec squeeze{w.s(), 0.0};
    // The overlap series converges factorially; a tight tail keeps it far below quadrature error.
  const int cutoff = std::max(fock::select_cutoff(squeeze, 0.0, 1e-24), 2);
  const auto state = fock::tmss_amplitudes(squeeze, cutoff, 1e-24);
  for (int n = 0; n < 3; ++n) {
    check.amplitude_deviation[n] =
        std::abs(superposition_fock_amplitude(w, n, quad).value - state.amps[n]);
  }
  check.overlap_quadrature = superposition_overlap(w, alpha, beta, quad);

  // <a, b|psi> = e^{-(|a|^2 + |b|^2)/2} sum_n c_n (a* b*)^n / n!
  const std::complex<double> ab = std::conj(alpha.value()) * std::conj(beta.value());
  std::complex<double> term = 1.0;
  std::complex<double> sum = 0.0;
  for (int n = 0; n <= state.cutoff; ++n) {
    sum += state.amps[n] * term;
    term *= ab / static_cast<double>(n + 1);
  }
  check.overlap_fock = std::exp(-0.5 * (alpha.norm2() + beta.norm2())) * sum;
  check.overlap_deviation = std::abs(check.overlap_quadrature - check.overlap_fock);
  return check;
}

}  // namespace tmsbell::verify
