#pragma once

#include <vector>

namespace mra {

// Gauss-Legendre nodes and weights on (0,1), one rule per axis.
struct QuadratureRule {
  std::vector<std::vector<double>> nodes;
  std::vector<std::vector<double>> weights;

  int dim() const { return static_cast<int>(nodes.size()); }
  int count(int axis) const { return static_cast<int>(nodes[static_cast<std::size_t>(axis)].size()); }
};

// n-point Gauss-Legendre rule mapped affinely onto (0,1). Exact for
// polynomials of degree <= 2n-1. Throws InvalidArgument for n < 1.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureRule gauss_rule(const std::vector<int>& n_per_axis);

/// Shifted Legendre polynomial of degree k, normalized to unit L2(0,1) norm:
/// sqrt(2k+1) * P_k(2x - 1).
double legendre_eval(int degree, double x);

// Values of degrees 0..max_degree at x, written into out[0..max_degree].
void legendre_eval_all(int max_degree, double x, double* out);

}  // namespace mra
