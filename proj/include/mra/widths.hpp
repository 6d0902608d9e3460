#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mra/index.hpp"
#include "mra/kernels.hpp"
#include "mra/projectors.hpp"
#include "mra/smoothness.hpp"

namespace mra {

// alpha - (1/p - 1/q)_+ e > 0 componentwise.
bool decay_condition(const SmoothnessParams& params, double q);

enum class WidthCase {
  // q <= p, or p < q <= 2 with the decay condition
  truncation,
  // q >= max(2, p) with alpha - (1/p) e - (1/2 - 1/p)_+ e > 0
  budgeted,
};
// Throws InvalidArgument when neither set of hypotheses holds.
WidthCase width_case(const SmoothnessParams& params, double q);

// n^-rate (log n)^log_power
struct WidthExponent {
  WidthCase which = WidthCase::truncation;
  double rate = 0;
  double log_power = 0;
};
WidthExponent width_exponent(const SmoothnessParams& params, double q);

// Cross weights: beta_j = 1 on the axes where alpha is minimal and, on the
// other axes, the midpoint of the open interval of admissible values
// (1, (alpha_j - s) / min(alpha - s e)) with s = (1/p - 1/q)_+; in the
// budgeted case the interval is further cut by the analogous bound with
// s = 1/p + (1/2 - 1/p)_+. Throws InvalidArgument if the decay condition
// fails.
std::vector<double> choose_beta(const SmoothnessParams& params, double q);

// sum over (kappa, beta) <= r of the detail dimension for degree l.
std::uint64_t cross_dimension(const std::vector<double>& beta, int r, const DegreeVector& l);

struct DimensionRow {
  int r = 0;
  std::uint64_t dimension = 0;
  double model = 0;  // 2^{r / min beta} r^{c - 1}, c = multiplicity of min beta
  double ratio() const { return static_cast<double>(dimension) / model; }
};
std::vector<DimensionRow> dimension_law(const std::vector<double>& beta, const DegreeVector& l, int r_min, int r_max);

struct TruncationPoint {
  int r = 0;
  std::uint64_t n = 0;          // dimension of the cross subspace
  double resolved = 0;          // ‖discarded blocks within the decomposition‖_{L_q}
  double unresolved = 0;        // analytic part beyond the decomposition (0 if none)
  double error = 0;             // total
};

// Truncation error of a decomposition over a box: the L_q norm of the sum of
// the blocks outside the cross (kappa, beta) <= r. Blocks are added from the
// largest r down, so every block is synthesized once.
std::vector<TruncationPoint> truncation_curve(const Decomposition& dec, const std::vector<double>& beta,
                                              const std::vector<int>& r_values, double q, Exec exec = default_exec());
TruncationPoint truncation_error(const GridFunction& f, const std::vector<double>& beta, int r, double q,
                                 const DegreeVector& l, Exec exec = default_exec());

// sum over kappa outside the box with (kappa, beta) > r of 4^{-(kappa, alpha)}:
// the squared L_2 norm of the part of the extremal profile that a
// decomposition over the box cannot hold.
double extremal_unresolved_sq(const std::vector<double>& alpha, const std::vector<double>& beta, int r,
                              const MultiIndex& box);

// Right-hand side of the tail bound for the discarded blocks.
double tail_model(const SmoothnessParams& params, double q, int r);

struct BudgetPlan {
  int r = 0;
  int j0 = 0;
  double mu = 0;
  double epsilon = 0;
  double gamma = 0;
  double gamma_prime = 0;
  double c0 = 0;
  std::vector<double> beta;
  std::map<MultiIndex, std::uint64_t> allocation;  // n_kappa for r < (kappa, beta) <= r + j0
  std::uint64_t cross_dim = 0;                     // sum of detail dimensions over (kappa, beta) <= r
  std::uint64_t budget = 0;                        // sum of n_kappa
  std::uint64_t total() const { return cross_dim + budget; }
  double audit_ratio = 0;                          // total / (2^r r^{c-1})
};

// Dimension allocation of the budgeted case. The free parameters epsilon,
// gamma and gamma' are midpoints of their admissible intervals, chosen in
// that order. Throws InvalidArgument if the budgeted hypotheses fail or beta
// violates its constraints.
BudgetPlan budget_plan(int r, const std::vector<double>& beta, const SmoothnessParams& params, double q);

struct RateFit {
  double intercept = 0;
  double slope = 0;            // coefficient of log n
  double log_coefficient = 0;  // coefficient of log log n
  double rms_residual = 0;
};

// Least squares log e = a + b log n + c log log n. Requires at least four
// points with n > e strictly increasing and e > 0; throws FitError otherwise
// or when the design matrix is rank deficient.
RateFit rate_fit(const std::vector<std::pair<double, double>>& points);

struct WidthExperimentConfig {
  SmoothnessParams params;
  double q = 2.0;
  int level = 8;  // resolution of the extremal function per axis
  int r_min = 4;
  int r_max = 10;
  int trials = 1;  // independent extremal draws; rows keep the largest error
  std::uint64_t seed = 1;
};

struct WidthExperimentRow {
  int r = 0;
  std::uint64_t n = 0;
  double error = 0;
  double model = 0;  // tail bound model at r
  double ratio() const { return error / model; }
};

struct WidthExperiment {
  std::vector<double> beta;
  WidthExponent exponent;
  bool analytic_tail = false;  // unresolved part added in closed form (p = q = 2)
  std::vector<WidthExperimentRow> rows;
  RateFit fit;
};

// Truncation of the extremal profile on the cross subspaces for r_min..r_max.
WidthExperiment run_width_experiment(const WidthExperimentConfig& cfg, Exec exec = default_exec());

}  // namespace mra
