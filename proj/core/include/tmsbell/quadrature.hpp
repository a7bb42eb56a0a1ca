#pragma once

#include <span>
#include <vector>

namespace tmsbell::quad {

/// n-point Gauss-Hermite rule for the integral of exp(-x^2) f(x) over the real line.
/// Nodes come from the Golub-Welsch eigenproblem and are polished by Newton
/// iteration on the orthonormal Hermite recurrence; weights use the Christoffel
/// formula, which keeps the tiny outer weights relatively accurate.
class GaussHermiteRule {
 public:
  explicit GaussHermiteRule(int n);

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// A factor exp(-curvature * (x - center)^2) of an integrand along one axis.
struct GaussianFactor {
  double curvature = 0.0;
  double center = 0.0;
};

/// Nodes and weights for the plain integral of f(x) dx along one axis.
/// The Hermite weight is matched to the narrowest factor (largest curvature,
/// scaled by `rescale`); the returned weights undo that Gaussian, so callers
/// evaluate their full integrand at the nodes.
struct AxisRule {
  std::vector<double> x;
  std::vector<double> w;
};

AxisRule matched_axis_rule(const GaussHermiteRule& rule, std::span<const GaussianFactor> factors,
                           double rescale = 1.0);

}  // namespace tmsbell::quad
