#pragma once

#include <cmath>
#include <complex>

namespace tmsbell {

inline constexpr double kPi = 3.14159265358979323846;

/// Largest squeezing magnitude accepted; cosh(2s) stays comfortably finite.
inline constexpr double kMaxSqueeze = 20.0;

/// Squeezing parameter sigma = s * exp(-i phi) of the two-mode squeezer.
struct SqueezeSpec {
  double s = 0.0;
  double phi = 0.0;
};

/// Mean thermal photon number of each (independent, identical) bath mode.
struct BathSpec {
  double nbar = 0.0;
};

/// Channel time expressed through the decayed fraction r = sqrt(1 - exp(-gamma tau)).
/// The transmitted amplitude t = sqrt(1 - r^2) is always derived from r.
class ChannelTime {
 public:
  ChannelTime() = default;
  explicit ChannelTime(double r);

  static ChannelTime from_gamma_tau(double gamma_tau);

  double r() const noexcept { return r_; }
  double t() const noexcept { return std::sqrt(1.0 - r_ * r_); }
  double t_squared() const noexcept { return 1.0 - r_ * r_; }
  /// gamma * tau = -ln(1 - r^2); infinite at r = 1.
  double gamma_tau() const noexcept { return -std::log1p(-r_ * r_); }

 private:
  double r_ = 0.0;
};

/// One complex phase-space displacement.
struct PhasePoint {
  double re = 0.0;
  double im = 0.0;

  constexpr PhasePoint() = default;
  constexpr PhasePoint(double re_, double im_) : re(re_), im(im_) {}
  static PhasePoint polar(double magnitude, double phase) {
    return {magnitude * std::cos(phase), magnitude * std::sin(phase)};
  }

  std::complex<double> value() const noexcept { return {re, im}; }
  double norm2() const noexcept { return re * re + im * im; }
  double abs() const noexcept { return std::hypot(re, im); }
};

/// Coefficients of the symmetric two-mode Gaussian Wigner function
///   W(alpha, beta) = bigN * exp[-E (|alpha|^2 + |beta|^2) + F (alpha beta + c.c.)].
/// bigN is fixed by unit normalization, bigN = (E^2 - F^2) / pi^2 = 4 / (pi^2 D).
struct GaussianCoeffs {
  double bigN = 0.0;
  double e_coef = 0.0;
  double f_coef = 0.0;
  double d_denom = 1.0;
};

void validate(const SqueezeSpec& squeeze);
void validate(const BathSpec& bath);
void validate(const PhasePoint& point);
void validate(const GaussianCoeffs& coeffs);

/// Gaussian coefficients of the two-mode squeezed vacuum after both modes passed
/// through identical thermal channels for time `time`. Requires phi = 0.
GaussianCoeffs evolve_coeffs(const SqueezeSpec& squeeze, const BathSpec& bath,
                             const ChannelTime& time);

/// Infinite-time limit: product of two thermal states. Bit-identical to
/// evolve_coeffs(any squeeze, bath, ChannelTime(1.0)).
///
/// The normalization used here is 4 / (pi^2 (1 + 2 nbar)^2), the value that makes
/// the exponent exp[-2 (|alpha|^2 + |beta|^2) / (1 + 2 nbar)] integrate to one.
GaussianCoeffs asymptotic_coeffs(const BathSpec& bath);

double wigner_value(const GaussianCoeffs& coeffs, const PhasePoint& alpha,
                    const PhasePoint& beta);

/// Closed-form Wigner function of the pure two-mode squeezed vacuum.
double initial_wigner(const SqueezeSpec& squeeze, const PhasePoint& alpha,
                      const PhasePoint& beta);

/// Single-mode thermal Wigner function, normalized over the complex plane.
double thermal_wigner(const BathSpec& bath, const PhasePoint& zeta);

}  // namespace tmsbell
