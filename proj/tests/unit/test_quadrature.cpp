#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tmsbell/error.hpp"
#include "tmsbell/quadrature.hpp"

namespace tmsbell::quad {
namespace {

TEST(GaussHermiteRule, FivePointTable) {
  const GaussHermiteRule rule(5);
  const double nodes[] = {-2.0201828704560856, -0.9585724646138185, 0.0, 0.9585724646138185,
                          2.0201828704560856};
  const double weights[] = {0.01995324205904591, 0.3936193231522412, 0.9453087204829419,
                            0.3936193231522412, 0.01995324205904591};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(rule.nodes()[i], nodes[i], 1e-14);
    EXPECT_NEAR(rule.weights()[i], weights[i], 1e-14);
  }
}

TEST(GaussHermiteRule, IntegratesEvenMomentsExactly) {
  for (int n : {2, 8, 24, 32, 64, 100}) {
    const GaussHermiteRule rule(n);
    // Exact for polynomials of degree <= 2n - 1.
    for (int k = 0; 2 * k <= std::min(2 * n - 1, 40); ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += rule.weights()[i] * std::pow(rule.nodes()[i], 2 * k);
      const double exact = std::tgamma(k + 0.5);
      EXPECT_NEAR(sum / exact, 1.0, 1e-12) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GaussHermiteRule, SymmetricAndOrdered) {
  const GaussHermiteRule rule(33);
  for (int i = 0; i < 33; ++i) {
    EXPECT_EQ(rule.nodes()[i], -rule.nodes()[32 - i]);
    EXPECT_EQ(rule.weights()[i], rule.weights()[32 - i]);
    if (i > 0) EXPECT_LT(rule.nodes()[i - 1], rule.nodes()[i]);
  }
  EXPECT_THROW(GaussHermiteRule(0), InvalidInput);
}

TEST(MatchedAxisRule, IntegratesProductOfShiftedGaussians) {
  // integral of exp(-a (x-p)^2) exp(-b (x-q)^2) = sqrt(pi/(a+b)) exp(-ab (p-q)^2/(a+b))
  const GaussHermiteRule rule(32);
  const double a = 7.0, p = 0.4, b = 0.3, q = -1.2;
  const std::vector<GaussianFactor> factors{{a, p}, {b, q}};
  const auto ax = matched_axis_rule(rule, factors);
  double sum = 0.0;
  for (std::size_t i = 0; i < ax.x.size(); ++i)
    sum += ax.w[i] * std::exp(-a * (ax.x[i] - p) * (ax.x[i] - p) - b * (ax.x[i] - q) * (ax.x[i] - q));
  const double exact = std::sqrt(3.14159265358979323846 / (a + b)) * std::exp(-a * b * (p - q) * (p - q) / (a + b));
  EXPECT_NEAR(sum, exact, 1e-13);
}

TEST(MatchedAxisRule, NeedsAConfiningFactor) {
  const GaussHermiteRule rule(8);
  const std::vector<GaussianFactor> flat{{0.0, 0.0}};
  EXPECT_THROW(matched_axis_rule(rule, flat), OracleError);
  EXPECT_THROW(matched_axis_rule(rule, {}), InvalidInput);
}

}  // namespace
}  // namespace tmsbell::quad
