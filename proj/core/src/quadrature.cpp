#include "tmsbell/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "tmsbell/error.hpp"

namespace tmsbell::quad {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct HermiteEval {
  double p_n;        // orthonormal p_n(x)
  double dp_n;       // derivative of p_n
  double christoffel;  // sum_{k<n} p_k(x)^2
};

HermiteEval orthonormal_hermite(int n, double x) {
  double p_prev = 0.0;
  double p = std::pow(kPi, -0.25);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    sum += p * p;
    const double next = x * std::sqrt(2.0 / (k + 1)) * p - std::sqrt(static_cast<double>(k) / (k + 1)) * p_prev;
    p_prev = p;
    p = next;
  }
  // p_n' = sqrt(2 n) p_{n-1}
  return {p, std::sqrt(2.0 * n) * p_prev, sum};
}

}  // namespace

GaussHermiteRule::GaussHermiteRule(int n) {
  if (n < 1) throw InvalidInput("Gauss-Hermite order must be >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  nodes_.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  weights_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = nodes_[i];
    for (int it = 0; it < 8; ++it) {
      const auto h = orthonormal_hermite(n, x);
      const double dx = h.p_n / h.dp_n;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    nodes_[i] = x;
    weights_[i] = 1.0 / orthonormal_hermite(n, x).christoffel;
  }
  // The rule is symmetric; enforce it exactly.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double node = 0.5 * (nodes_[j] - nodes_[i]);
    const double weight = 0.5 * (weights_[i] + weights_[j]);
    nodes_[i] = -node;
    nodes_[j] = node;
    weights_[i] = weights_[j] = weight;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

AxisRule matched_axis_rule(const GaussHermiteRule& rule, std::span<const GaussianFactor> factors,
                           double rescale) {
  if (factors.empty()) throw InvalidInput("matched_axis_rule needs at least one factor");
  if (!(rescale > 0.0)) throw InvalidInput("quadrature rescale must be > 0");
  const auto narrowest = std::max_element(
      factors.begin(), factors.end(),
      [](const GaussianFactor& a, const GaussianFactor& b) { return a.curvature < b.curvature; });
  const double lambda = narrowest->curvature * rescale;
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw OracleError("integrand has no confining Gaussian factor along an axis");
  const double scale = 1.0 / std::sqrt(lambda);
  AxisRule out;
  out.x.resize(static_cast<std::size_t>(rule.size()));
  out.w.resize(out.x.size());
  for (int i = 0; i < rule.size(); ++i) {
    const double y = rule.nodes()[i];
    out.x[i] = narrowest->center + scale * y;
    out.w[i] = rule.weights()[i] * std::exp(y * y) * scale;
  }
  return out;
}

}  // namespace tmsbell::quad
