#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "tmsbell/bell.hpp"
#include "tmsbell/error.hpp"
#include "tmsbell/fock_oracle.hpp"

namespace tmsbell::fock {
namespace {

using cplx = std::complex<double>;

// Closed form via associated Laguerre polynomials, independent of the recurrence.
cplx laguerre_element(const PhasePoint& alpha, int m, int n) {
  const cplx a = alpha.value();
  const double x = alpha.norm2();
  const double gauss = std::exp(-x / 2.0);
  if (m >= n) {
    const double ratio = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
    return ratio * std::pow(a, m - n) * gauss * std::assoc_laguerre(n, m - n, x);
  }
  const double ratio = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)));
  return ratio * std::pow(-std::conj(a), n - m) * gauss * std::assoc_laguerre(m, n - m, x);
}

PhasePoint random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return PhasePoint::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

TEST(TmssAmplitudes, Vacuum) {
  const auto st = tmss_amplitudes({0.0, 0.0}, 4);
  ASSERT_EQ(st.amps.size(), 5u);
  EXPECT_EQ(st.amps[0], 1.0);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(st.amps[n], 0.0);
  EXPECT_EQ(st.deficit, 0.0);
  EXPECT_FALSE(st.tail_warning);
}

TEST(TmssAmplitudes, SingleTermDeficit) {
  const auto st = tmss_amplitudes({0.5, 0.0}, 0);
  EXPECT_NEAR(st.amps[0], 1.0 / std::cosh(0.5), 1e-15);
  const double sech = 1.0 / std::cosh(0.5);
  EXPECT_NEAR(st.deficit, 1.0 - sech * sech, 1e-15);
  EXPECT_TRUE(st.tail_warning);
}

TEST(TmssAmplitudes, GeometricSeriesConverges) {
  const auto st = tmss_amplitudes({0.5, 0.0}, 40);
  double norm = 0.0;
  for (double a : st.amps) norm += a * a;
  EXPECT_NEAR(norm, 1.0, 1e-12);
  EXPECT_NEAR(1.0 - norm, st.deficit, 1e-15);
  EXPECT_THROW(tmss_amplitudes({0.5, 0.2}, 4), InvalidInput);
  EXPECT_THROW(tmss_amplitudes({0.5, 0.0}, -1), InvalidInput);
}

TEST(SelectCutoff, TailBoundAndDisplacementDoubling) {
  for (double s : {0.1, 0.5, 1.0}) {
    const int n = select_cutoff({s, 0.0});
    const double x = std::tanh(s) * std::tanh(s);
    EXPECT_LT(std::pow(x, n + 1) / (1.0 - x), kDefaultTailTolerance);
    if (n > 1) EXPECT_GE(std::pow(x, n) / (1.0 - x), kDefaultTailTolerance);
  }
  EXPECT_EQ(select_cutoff({1.0, 0.0}), 60);
  const int base = select_cutoff({0.1, 0.0});
  EXPECT_EQ(select_cutoff({0.1, 0.0}, 9.0), 8 * base);
}

TEST(DisplacementMatrix, IdentityAtOrigin) {
  const auto d = displacement_matrix({}, 12);
  EXPECT_LT((d - Eigen::MatrixXcd::Identity(13, 13)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DisplacementMatrix, FirstColumnIsCoherentState) {
  const auto d = displacement_matrix({1.0, 0.0}, 30);
  for (int n = 0; n <= 30; ++n) {
    const double expected = std::exp(-0.5 - 0.5 * std::lgamma(n + 1.0));
    EXPECT_NEAR(d(n, 0).real(), expected, 1e-15);
    EXPECT_NEAR(d(n, 0).imag(), 0.0, 1e-15);
  }
}

TEST(DisplacementMatrix, TruncatedBlockIsUnitary) {
  // Columns n < 15 displaced by |alpha|^2 = 2.5 carry no weight beyond 50.
  const auto d = displacement_matrix({0.9, -1.3}, 50);
  const Eigen::MatrixXcd prod = d.adjoint() * d;
  const auto block = prod.topLeftCorner(15, 15);
  EXPECT_LT((block - Eigen::MatrixXcd::Identity(15, 15)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(DisplacementMatrix, MatchesLaguerreClosedForm) {
  for (const PhasePoint alpha : {PhasePoint{0.8, -0.5}, PhasePoint{-1.7, 1.1}, PhasePoint{0.05, 0.0}}) {
    const int cutoff = 40;
    const auto d = displacement_matrix(alpha, cutoff);
    for (int m = 0; m <= cutoff; ++m)
      for (int n = 0; n <= cutoff; ++n)
        EXPECT_LT(std::abs(d(m, n) - laguerre_element(alpha, m, n)), 1e-12)
            << m << ',' << n << " alpha=" << alpha.re << ',' << alpha.im;
  }
}

TEST(DisplacementMatrix, DeepDiagonalMatchesHighPrecisionValues) {
  // Reference values from 50-digit arithmetic.
  const auto d = displacement_matrix({-1.7, 1.1}, 40);
  EXPECT_NEAR(d(30, 30).real(), -0.1457199507220004, 1e-15);
  EXPECT_NEAR(d(40, 40).real(), 0.1528584376282023, 1e-15);
  EXPECT_NEAR(d(25, 22).real(), -0.007595940604127893, 1e-15);
  EXPECT_NEAR(d(25, 22).imag(), -0.049548719075893026, 1e-15);
  EXPECT_NEAR(d(24, 30).real(), -0.11363892385074316, 1e-15);
  EXPECT_NEAR(d(24, 30).imag(), -0.03568081127330964, 1e-15);
}

TEST(DisplacementMatrix, RejectsDisplacementBeyondCutoff) {
  EXPECT_THROW(displacement_matrix({5.0, 0.0}, 10), OracleError);
  EXPECT_THROW(displacement_matrix({0.0, 0.0}, -1), InvalidInput);
}

TEST(DisplacedParity, AgreesWithExplicitProjectorSum) {
  const PhasePoint alpha{0.6, 0.35};
  const int cutoff = 12;
  const auto fast = displaced_parity_matrix(alpha, cutoff).entries;
  const Eigen::MatrixXcd slow = parity_projector(alpha, cutoff, Parity::kEven, 120) -
                                parity_projector(alpha, cutoff, Parity::kOdd, 120);
  EXPECT_LT((fast - slow).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DisplacedParity, HermitianWithSpectrumInUnitInterval) {
  const auto p = displaced_parity_matrix({0.4, -0.2}, 40).entries;
  EXPECT_LT((p - p.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(p);
  EXPECT_LE(eig.eigenvalues().maxCoeff(), 1.0 + 1e-12);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1.0 - 1e-12);
}

TEST(DisplacedParity, CompletenessOnTruncatedState) {
  // <Pi_e + Pi_o> on one mode of the truncated state equals sum amps^2.
  const auto st = tmss_amplitudes({0.7, 0.0}, 20);
  const PhasePoint alpha{0.5, 0.3};
  const Eigen::MatrixXcd total = parity_projector(alpha, 20, Parity::kEven, 120) +
                                 parity_projector(alpha, 20, Parity::kOdd, 120);
  double expectation = 0.0, norm = 0.0;
  for (int n = 0; n <= 20; ++n) {
    expectation += st.amps[n] * st.amps[n] * total(n, n).real();
    norm += st.amps[n] * st.amps[n];
  }
  EXPECT_NEAR(expectation, norm, 1e-12);
}

TEST(JointParity, OriginIsEvenForEveryS) {
  for (double s : {0.0, 0.4, 1.2}) {
    const auto st = tmss_amplitudes({s, 0.0}, select_cutoff({s, 0.0}));
    EXPECT_NEAR(joint_parity_expectation(st, {}, {}).value, 1.0, 1e-12);
  }
}

TEST(JointParity, VacuumProductOfSingleModeParities) {
  const auto st = tmss_amplitudes({0.0, 0.0}, 10);
  const double value = joint_parity_expectation(st, {0.7, 0.0}, {0.2, 0.0}).value;
  EXPECT_NEAR(value, std::exp(-2.0 * 0.49) * std::exp(-2.0 * 0.04), 1e-14);
  EXPECT_NEAR(4.0 / (kPi * kPi) * value, initial_wigner({0.0, 0.0}, {0.7, 0.0}, {0.2, 0.0}), 1e-15);
}

TEST(JointParity, ReproducesSqueezedVacuumWigner) {
  std::mt19937_64 rng(17);
  for (double s : {0.1, 0.5, 1.0}) {
    const auto st = tmss_amplitudes({s, 0.0}, select_cutoff({s, 0.0}, 1.0));
    for (int i = 0; i < 100; ++i) {
      const auto a = random_point(rng, 1.0);
      const auto b = random_point(rng, 1.0);
      const double w = 4.0 / (kPi * kPi) * joint_parity_expectation(st, a, b).value;
      EXPECT_NEAR(w, initial_wigner({s, 0.0}, a, b), 1e-8) << "s=" << s;
    }
  }
}

TEST(JointParity, DoublingCutoffStaysWithinTailBound) {
  std::mt19937_64 rng(23);
  for (double s : {0.3, 0.9}) {
    const int n = select_cutoff({s, 0.0}, 0.5, 1e-6);
    const auto coarse = tmss_amplitudes({s, 0.0}, n, 1e-6);
    const auto fine = tmss_amplitudes({s, 0.0}, 2 * n, 1e-6);
    for (int i = 0; i < 20; ++i) {
      const auto a = random_point(rng, 0.7);
      const auto b = random_point(rng, 0.7);
      const auto ec = joint_parity_expectation(coarse, a, b);
      const auto ef = joint_parity_expectation(fine, a, b);
      EXPECT_LE(std::abs(ec.value - ef.value), ec.truncation_bound);
    }
  }
}

TEST(JointParity, ReportsInsufficientCutoff) {
  const auto st = tmss_amplitudes({1.0, 0.0}, 3);
  EXPECT_FALSE(joint_parity_expectation(st, {0.1, 0.0}, {0.1, 0.0}).within_tolerance);
}

TEST(BellFromFock, VacuumOrigin) {
  EXPECT_NEAR(bell_from_fock(tmss_amplitudes({0.0, 0.0}, 6), {}, {}).value, 2.0, 1e-15);
}

TEST(BellFromFock, MatchesGaussianBellAtOptimizerPoint) {
  const auto c = evolve_coeffs({0.3, 0.0}, {0.0}, ChannelTime(0.0));
  const auto best = max_bell(c);
  const PhasePoint a{best.arg_a, 0.0}, b{-best.arg_b, 0.0};
  const auto st = tmss_amplitudes({0.3, 0.0}, 40);
  EXPECT_NEAR(bell_from_fock(st, a, b).value, best.b_max, 1e-6);
}

TEST(BellFromFock, MatchesGaussianBellAtRandomPointStrongSqueezing) {
  const auto c = evolve_coeffs({1.0, 0.0}, {0.0}, ChannelTime(0.0));
  const PhasePoint a{0.21, -0.13}, b{-0.3, 0.05};
  const auto st = tmss_amplitudes({1.0, 0.0}, 60);
  EXPECT_NEAR(bell_from_fock(st, a, b).value, bell_function(c, a, b), 1e-6);
}

}  // namespace
}  // namespace tmsbell::fock
