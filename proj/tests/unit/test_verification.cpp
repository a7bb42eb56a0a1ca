#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "tmsbell/error.hpp"
#include "tmsbell/fock_oracle.hpp"
#include "tmsbell/verification.hpp"

namespace tmsbell::verify {
namespace {

QuadratureSpec nodes(int n) {
  QuadratureSpec q;
  q.nodes_per_axis = n;
  return q;
}

TEST(ConvolveNumeric, RecoversNormalizationAtOrigin) {
  const double value = convolve_numeric({0.3, 0.0}, {0.5}, ChannelTime(0.5), {}, {}, nodes(24));
  const auto c = evolve_coeffs({0.3, 0.0}, {0.5}, ChannelTime(0.5));
  EXPECT_NEAR(value, c.bigN, 1e-8);
  EXPECT_NEAR(value, 0.2381787689864282569, 1e-8);
}

TEST(ConvolveNumeric, UnsqueezedInputFactorizes) {
  // Each mode: vacuum through a thermal channel is thermal with width t^2 + r^2 (1 + 2 nbar).
  const double r = 0.5, nbar = 0.8;
  const double width = (1.0 - r * r) + r * r * (1.0 + 2.0 * nbar);
  const double single = 2.0 / (kPi * width);
  EXPECT_NEAR(convolve_numeric({0.0, 0.0}, {nbar}, ChannelTime(r), {}, {}, nodes(24)),
              single * single, 1e-12);
}

TEST(ConvolveNumeric, MatchesClosedFormAtRandomPoints) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  const auto c = evolve_coeffs({1.0, 0.0}, {1.0}, ChannelTime(0.7));
  for (int i = 0; i < 5; ++i) {
    const PhasePoint a{u(rng), u(rng)}, b{u(rng), u(rng)};
    EXPECT_NEAR(convolve_numeric({1.0, 0.0}, {1.0}, ChannelTime(0.7), a, b, nodes(24)),
                wigner_value(c, a, b), 1e-6);
  }
}

TEST(ConvolveNumeric, StableUnderNodeDoubling) {
  const PhasePoint a{0.4, -0.2}, b{0.1, 0.5};
  const double coarse = convolve_numeric({0.5, 0.0}, {2.0}, ChannelTime(0.3), a, b, nodes(16));
  const double fine = convolve_numeric({0.5, 0.0}, {2.0}, ChannelTime(0.3), a, b, nodes(32));
  EXPECT_NEAR(coarse, fine, 1e-8);
}

TEST(ConvolveNumeric, RejectsDegenerateEndpoints) {
  EXPECT_THROW(convolve_numeric({0.3, 0.0}, {0.5}, ChannelTime(0.0), {}, {}), OracleError);
  EXPECT_THROW(convolve_numeric({0.3, 0.0}, {0.5}, ChannelTime(1.0), {}, {}), OracleError);
  EXPECT_THROW(convolve_numeric({0.3, 0.0}, {0.5}, ChannelTime(0.5), {}, {}, nodes(1)), InvalidInput);
}

TEST(WeightFunction, PlugInValues) {
  const WeightFunction w(0.5);
  EXPECT_NEAR(weight_value(w, {}), 1.0 / (kPi * std::sinh(0.5)), 1e-15);
  EXPECT_NEAR(weight_value(w, PhasePoint::polar(1.0, 0.3)), 0.19073676911881010274, 1e-15);
  EXPECT_THROW(WeightFunction(0.0), InvalidInput);
  EXPECT_THROW(WeightFunction(-1.0), InvalidInput);
}

TEST(WeightFunction, FlattensWithSqueezing) {
  double previous = INFINITY;
  for (double s : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const WeightFunction w(s);
    EXPECT_GT(w.exponent_coef(), 0.0);
    EXPECT_LT(w.exponent_coef(), previous);
    previous = w.exponent_coef();
  }
  EXPECT_LT(WeightFunction(8.0).exponent_coef(), 1e-6);
}

TEST(SuperpositionNorm, IsUnity) {
  const auto est = superposition_norm(WeightFunction(0.3));
  EXPECT_NEAR(est.value, 1.0, 1e-6);
}

TEST(SuperpositionNorm, RefinementConverges) {
  QuadratureSpec q = nodes(24);
  q.check_refinement = true;
  const auto est = superposition_norm(WeightFunction(0.8), q);
  EXPECT_LT(est.refinement_delta, 1e-6);
  EXPECT_TRUE(est.converged);
}

TEST(SuperpositionAmplitudes, MatchSchmidtCoefficients) {
  const WeightFunction w(0.5);
  const auto st = fock::tmss_amplitudes({0.5, 0.0}, 4);
  EXPECT_NEAR(superposition_fock_amplitude(w, 0).value, 1.0 / std::cosh(0.5), 1e-8);
  EXPECT_NEAR(superposition_fock_amplitude(w, 1).value, std::tanh(0.5) / std::cosh(0.5), 1e-8);
  for (int n = 0; n <= 2; ++n) EXPECT_NEAR(superposition_fock_amplitude(w, n).value, st.amps[n], 1e-8);
  EXPECT_NEAR(superposition_fock_amplitude(WeightFunction(0.3), 0).value, 1.0 / std::cosh(0.3), 1e-8);
}

TEST(SuperpositionCheck, CoherentOverlapAgreesWithFockSeries) {
  const WeightFunction w(0.6);
  const auto check = superposition_wigner_check(w, {0.3, -0.4}, {-0.2, 0.7});
  EXPECT_LT(check.worst(), 1e-8);
  // Closed form: sech(s) e^{-(|a|^2+|b|^2)/2} exp(tanh(s) a* b*).
  const std::complex<double> a(0.3, -0.4), b(-0.2, 0.7);
  const auto closed = std::exp(-0.5 * (std::norm(a) + std::norm(b)) +
                               std::tanh(0.6) * std::conj(a) * std::conj(b)) /
                      std::cosh(0.6);
  EXPECT_LT(std::abs(check.overlap_quadrature - closed), 1e-10);
}

}  // namespace
}  // namespace tmsbell::verify
