#include "mra/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "mra/error.hpp"

namespace mra {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw InvalidArgument("gauss rule needs at least one node");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  // Newton iteration on P_n over (-1,1), roots are symmetric so only half
  // are computed.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    // z is the i-th largest root; map (-1,1) -> (0,1) in increasing order
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes[lo] = 0.5 * (1.0 - z);
    nodes[hi] = 0.5 * (1.0 + z);
    weights[lo] = 0.5 * w;
    weights[hi] = 0.5 * w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.5;
}

QuadratureRule gauss_rule(const std::vector<int>& n_per_axis) {
  if (n_per_axis.empty()) throw InvalidArgument("gauss rule needs at least one axis");
  QuadratureRule rule;
  rule.nodes.resize(n_per_axis.size());
  rule.weights.resize(n_per_axis.size());
  for (std::size_t j = 0; j < n_per_axis.size(); ++j)
    gauss_legendre_01(n_per_axis[j], rule.nodes[j], rule.weights[j]);
  return rule;
}

void legendre_eval_all(int max_degree, double x, double* out) {
  const double t = 2.0 * x - 1.0;
  double p0 = 1.0, p1 = t;
  out[0] = 1.0;
  if (max_degree >= 1) out[1] = std::sqrt(3.0) * t;
  for (int k = 2; k <= max_degree; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
    out[k] = std::sqrt(2.0 * k + 1.0) * p2;
  }
}

double legendre_eval(int degree, double x) {
  if (degree < 0) throw InvalidArgument("negative Legendre degree");
  if (degree == 0) return 1.0;
  std::vector<double> v(static_cast<std::size_t>(degree) + 1);
  legendre_eval_all(degree, x, v.data());
  return v.back();
}

}  // namespace mra
