#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mra/grid.hpp"
#include "mra/index.hpp"
#include "mra/kernels.hpp"
#include "mra/projectors.hpp"

namespace mra {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Mixed smoothness alpha > 0 measured in L_p, with the fine index theta of
// the Besov scale (theta = inf gives the Holder class).
struct SmoothnessParams {
  std::vector<double> alpha;
  double p = 2.0;
  double theta = kInfinity;

  int dim() const { return static_cast<int>(alpha.size()); }
  // Difference order l_j = min{m in N : alpha_j < m}.
  std::vector<int> order() const;
  // Polynomial degree l(alpha) - 1 per axis used for the projectors.
  DegreeVector projection_degree() const;
  // Throws InvalidArgument on alpha <= 0, p < 1 or theta < 1.
  void validate() const;
};

// Smallest component and how many components attain it (1e-12 relative).
double min_alpha(const std::vector<double>& alpha);
int min_multiplicity(const std::vector<double>& alpha);

// Values on the restricted domain {x : x + k h in (0,1)^d for all k <= l};
// mask[i] is 1 on nodes of that domain.
struct MaskedFunction {
  GridFunction values;
  std::vector<std::uint8_t> mask;

  bool empty() const;
  // L_p norm over the restricted domain (quadrature), 1 <= p < inf.
  double lp_norm(double p) const;
};

// Mixed difference of order `order` with step h_j = shift_j * 2^-K: the shifts
// are whole cells, so shifted nodes are again grid nodes. Binomial form
//   sum_{k <= l} (-1)^{|l - k|} C(l, k) f(x + k h).
MaskedFunction mixed_difference(const GridFunction& f, const std::vector<int>& shift, const std::vector<int>& order);
// Same operator as repeated first differences, one axis after another.
MaskedFunction mixed_difference_iterated(const GridFunction& f, const std::vector<int>& shift,
                                         const std::vector<int>& order);

// max over whole-cell steps 1 <= m_j <= t_j 2^K on the axes with order_j > 0
// of ‖Delta_h f‖_{L_p} on the restricted domain. A lower estimate of the
// modulus of continuity; 0 when some t_j is below one cell.
double mixed_modulus(const GridFunction& f, const std::vector<double>& t, const std::vector<int>& order, double p,
                     Exec exec = default_exec());

// Modulus at the dyadic scales t_j = 2^-a_j, a_j = 0..K, over the axes J
// with order_j > 0. Row-major over the axes of J.
struct ModulusTable {
  std::vector<int> axes;  // J
  int level = 0;          // K
  std::vector<double> values;

  std::size_t index(const std::vector<int>& a) const;
  double at(const std::vector<int>& a) const { return values[index(a)]; }
};

ModulusTable modulus_table(const GridFunction& f, const std::vector<int>& order, double p, Exec exec = default_exec());

struct SeminormReport {
  double value = 0;                  // max over J
  std::vector<unsigned> subsets;     // bitmask of J, in increasing order
  std::vector<double> per_subset;
};

// Discretized class seminorm: for every nonempty J the integral over t^J of
// prod t_j^{-1 - theta alpha_j} Omega^{l chi_J}(f, t)^theta, with t_j split
// into [1, inf) and [2^-a, 2^{1-a}), a = 1..K, and Omega frozen at the lower
// end of each block; theta = inf takes max_a 2^{(a, alpha)} Omega(2^-a).
SeminormReport besov_seminorm(const GridFunction& f, const SmoothnessParams& params, Exec exec = default_exec());

struct DecayRow {
  MultiIndex kappa;
  double norm = 0;   // ‖detail projection at kappa‖_{L_q}
  double model = 0;  // 2^{-(kappa, alpha - (1/p - 1/q)_+ e)}
  double ratio() const { return norm / model; }
};

// Detail projections of degree l(alpha) - 1 for every kappa != 0 in the box,
// against the decay model. 1 <= q < inf.
std::vector<DecayRow> decay_check(const GridFunction& f, const SmoothnessParams& params, double q, const MultiIndex& box,
                                  Exec exec = default_exec());
double decay_exponent_shift(double p, double q);  // (1/p - 1/q)_+

struct ExtremalFunction {
  Decomposition dec;
  GridFunction f;
};

// Random detail blocks of degree l(alpha) - 1 with ‖E_kappa f‖_{L_p} =
// 2^{-(kappa, alpha)} for every kappa <= box. The grid must resolve the box.
ExtremalFunction synthesize_extremal(const SmoothnessParams& params, const Grid& grid, const MultiIndex& box,
                                     std::uint64_t seed, Exec exec = default_exec());

// Divides f by its discretized seminorm (when positive); returns the factor
// that was applied.
double normalize(GridFunction& f, const SmoothnessParams& params, Exec exec = default_exec());

}  // namespace mra
