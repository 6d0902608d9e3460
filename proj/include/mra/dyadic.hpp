#pragma once

#include <cstdint>
#include <vector>

#include "mra/index.hpp"

namespace mra {

// Open dyadic cell 2^-level (position + (0,1)^d). Positions may be negative
// or exceed 2^level - 1 for cells outside (0,1)^d.
struct DyadicCube {
  MultiIndex level;
  std::vector<std::int64_t> position;

  int dim() const { return level.dim(); }
  // Cell inside (0,1)^d: 0 <= position_j < 2^level_j.
  bool inside_unit_cube() const;
  // Exact bounds on axis j in units of 2^-scale (scale >= level_j).
  std::int64_t lo(int axis, int scale) const;
  std::int64_t hi(int axis, int scale) const;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
};

enum class Nesting {
  disjoint,
  a_inside_b,
  b_inside_a,
  equal,
  // interiors meet but neither contains the other; only possible when the
  // two level vectors are not componentwise comparable
  overlap,
};

// Exact integer comparison of two dyadic cells.
Nesting nesting(const DyadicCube& a, const DyadicCube& b);

// All kappa <= k componentwise, lexicographic (last axis fastest).
std::vector<MultiIndex> enum_box(const MultiIndex& k);

// Hyperbolic cross {kappa : (kappa, beta) <= r}.
struct CrossParams {
  std::vector<double> beta;
  int radius = 0;
};

// Tie-inclusive comparison (kappa, beta) <= r with relative tolerance 1e-12.
bool within_cross(const MultiIndex& kappa, const std::vector<double>& beta, double r);
double dot(const MultiIndex& kappa, const std::vector<double>& beta);

// {kappa : (kappa, beta) <= r}, lexicographic. Enumerates the bounding box
// kappa_j <= floor(r / beta_j) and filters.
std::vector<MultiIndex> enum_cross(const CrossParams& params);

// {kappa : s-1 < (kappa, beta) <= s}; the complement of the radius-(s-1)
// cross inside the radius-s cross.
std::vector<MultiIndex> enum_shell(const std::vector<double>& beta, int s);

// One row of the counting table for sums over hyperbolic crosses.
struct CountingRow {
  int r = 0;
  double head_sum = 0;    // sum_{(kappa,beta) <= r} 2^{(kappa,alpha)}
  double head_model = 0;  // 2^{M r} r^{C-1}, M = max(alpha/beta)
  double tail_sum = 0;    // sum_{(kappa,beta) > r} 2^{-(kappa,alpha)}
  double tail_model = 0;  // 2^{-m r} r^{c-1}, m = min(alpha/beta)
  double head_ratio() const { return head_sum / head_model; }
  double tail_ratio() const { return tail_sum / tail_model; }
};

// Exact head and (negligibly truncated) tail sums against their growth
// models for r = 1..r_max. Requires beta > 0 and alpha > 0.
std::vector<CountingRow> counting_ratios(const std::vector<double>& beta, const std::vector<double>& alpha, int r_max);

// max / min of a vector and the number of entries attaining it, with the
// same 1e-12 relative tie tolerance as the cross predicate.
struct Extremum {
  double value;
  int multiplicity;
};
Extremum max_with_multiplicity(const std::vector<double>& x);
Extremum min_with_multiplicity(const std::vector<double>& x);

}  // namespace mra
