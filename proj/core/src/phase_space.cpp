#include "tmsbell/phase_space.hpp"

#include <string>

#include "tmsbell/error.hpp"

namespace tmsbell {
namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InvalidInput(std::string(what) + " must be finite");
}

// Shared by evolve_coeffs and asymptotic_coeffs so that r = 1 gives identical bits.
GaussianCoeffs channel_coeffs(double cosh2s, double sinh2s, double r2, double t2,
                              double thermal_width) {
  const double m = thermal_width;
  const double d = t2 * t2 + 2.0 * r2 * t2 * m * cosh2s + r2 * r2 * m * m;
  GaussianCoeffs c;
  c.e_coef = (2.0 * r2 * m + 2.0 * t2 * cosh2s) / d;
  c.f_coef = 2.0 * t2 * sinh2s / d;
  c.d_denom = d;
  // E^2 - F^2 = 4 / D exactly; forming the difference directly cancels
  // catastrophically once cosh(2s) is large.
  c.bigN = 4.0 / (kPi * kPi * d);
  return c;
}

}  // namespace

ChannelTime::ChannelTime(double r) : r_(r) {
  require_finite(r, "r");
  if (r < 0.0 || r > 1.0) throw InvalidInput("r must lie in [0, 1], got " + std::to_string(r));
}

ChannelTime ChannelTime::from_gamma_tau(double gamma_tau) {
  if (std::isnan(gamma_tau) || gamma_tau < 0.0) throw InvalidInput("gamma*tau must be >= 0");
  if (std::isinf(gamma_tau)) return ChannelTime(1.0);
  return ChannelTime(std::sqrt(-std::expm1(-gamma_tau)));
}

void validate(const SqueezeSpec& squeeze) {
  require_finite(squeeze.s, "s");
  require_finite(squeeze.phi, "phi");
  if (squeeze.s < 0.0) throw InvalidInput("squeezing s must be >= 0");
  if (squeeze.s > kMaxSqueeze)
    throw InvalidInput("squeezing s must be <= " + std::to_string(kMaxSqueeze));
}

void validate(const BathSpec& bath) {
  require_finite(bath.nbar, "nbar");
  if (bath.nbar < 0.0) throw InvalidInput("thermal photon number nbar must be >= 0");
}

void validate(const PhasePoint& point) {
  require_finite(point.re, "phase point (real part)");
  require_finite(point.im, "phase point (imaginary part)");
}

void validate(const GaussianCoeffs& coeffs) {
  require_finite(coeffs.bigN, "N");
  require_finite(coeffs.e_coef, "E");
  require_finite(coeffs.f_coef, "F");
  // E - |F| >= 2 e^{-2s} mathematically, but it rounds to zero in double for
  // s above about 9; equality is accepted and bigN carries the positivity.
  if (!(coeffs.e_coef > 0.0) || !(coeffs.e_coef >= std::abs(coeffs.f_coef)))
    throw InvalidInput("Gaussian coefficients must satisfy E > 0 and E >= |F|");
  if (!(coeffs.bigN > 0.0)) throw InvalidInput("normalization N must be positive");
}

GaussianCoeffs evolve_coeffs(const SqueezeSpec& squeeze, const BathSpec& bath,
                             const ChannelTime& time) {
  validate(squeeze);
  validate(bath);
  if (squeeze.phi != 0.0)
    throw InvalidInput("evolution is only defined for squeezing phase phi = 0");
  const double r2 = time.r() * time.r();
  return channel_coeffs(std::cosh(2.0 * squeeze.s), std::sinh(2.0 * squeeze.s), r2,
                        1.0 - r2, 1.0 + 2.0 * bath.nbar);
}

GaussianCoeffs asymptotic_coeffs(const BathSpec& bath) {
  validate(bath);
  // cosh/sinh are irrelevant once t = 0; any finite pair gives the same bits.
  return channel_coeffs(1.0, 0.0, 1.0, 0.0, 1.0 + 2.0 * bath.nbar);
}

double wigner_value(const GaussianCoeffs& coeffs, const PhasePoint& alpha,
                    const PhasePoint& beta) {
  validate(alpha);
  validate(beta);
  // alpha beta + alpha* beta* = 2 (Re alpha Re beta - Im alpha Im beta)
  const double cross = 2.0 * (alpha.re * beta.re - alpha.im * beta.im);
  return coeffs.bigN *
         std::exp(-coeffs.e_coef * (alpha.norm2() + beta.norm2()) + coeffs.f_coef * cross);
}

double initial_wigner(const SqueezeSpec& squeeze, const PhasePoint& alpha,
                      const PhasePoint& beta) {
  validate(squeeze);
  validate(alpha);
  validate(beta);
  if (squeeze.phi != 0.0)
    throw InvalidInput("the squeezed-vacuum Wigner function is implemented for phi = 0 only");
  const double cross = 2.0 * (alpha.re * beta.re - alpha.im * beta.im);
  return 4.0 / (kPi * kPi) *
         std::exp(-2.0 * std::cosh(2.0 * squeeze.s) * (alpha.norm2() + beta.norm2()) +
                  2.0 * std::sinh(2.0 * squeeze.s) * cross);
}

double thermal_wigner(const BathSpec& bath, const PhasePoint& zeta) {
  validate(bath);
  validate(zeta);
  const double width = 1.0 + 2.0 * bath.nbar;
  return 2.0 / (kPi * width) * std::exp(-2.0 * zeta.norm2() / width);
}

}  // namespace tmsbell
