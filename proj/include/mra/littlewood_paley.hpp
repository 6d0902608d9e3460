#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mra/grid.hpp"
#include "mra/index.hpp"
#include "mra/projectors.hpp"
#include "mra/random.hpp"

namespace mra {

// Signs sigma_kappa in {-1,+1} for the blocks of a box. Product-form families
// have sigma_kappa = prod_j s_j(kappa_j); a family built from an explicit
// table is accepted too but lies outside the hypotheses of the sign-series
// bounds, which product_form() reports.
class SignFamily {
 public:
  // axis_signs[j][m] is the sign used on axis j at level m.
  static SignFamily product(std::vector<std::vector<int>> axis_signs);
  static SignFamily table(std::map<MultiIndex, int> signs);
  static SignFamily all_plus(const MultiIndex& k);
  static SignFamily random_product(const MultiIndex& k, Rng& rng);

  bool product_form() const { return table_.empty(); }
  int sign(const MultiIndex& kappa) const;

 private:
  std::vector<std::vector<int>> axis_;
  std::map<MultiIndex, int> table_;
};

// Pointwise (sum over blocks of (detail projection)^2)^{1/2}.
GridFunction square_function(const Decomposition& dec);

// sum_{kappa <= k} sigma_kappa E_kappa f. With all signs +1 this is E_k f,
// and applying the same product-form family twice returns E_k f.
GridFunction apply_signs(const GridFunction& f, const SignFamily& signs, const MultiIndex& k, const DegreeVector& l);

struct LPRatio {
  double square_norm = 0;    // ‖S f‖_p
  double function_norm = 0;  // ‖E_k f‖_p
  double ratio() const { return square_norm / function_norm; }
};

// ‖S f‖_p against ‖E_k f‖_p over the box k (equal to ‖f‖_p when f is a
// piecewise polynomial of level k). Requires 1 < p < inf.
LPRatio lp_equivalence(const GridFunction& f, double p, const MultiIndex& k, const DegreeVector& l);

// ‖sum_{kappa <= k} sigma_kappa E_kappa f‖_p, 1 < p < inf.
double sign_series(const GridFunction& f, const SignFamily& signs, double p, const MultiIndex& k, const DegreeVector& l);

// ‖E_k f‖_p / (sum_{kappa <= k} ‖E_kappa f‖_p^{p*})^{1/p*}, p* = min(2, p),
// 1 <= p < inf.
double pstar_ratio(const GridFunction& f, double p, const MultiIndex& k, const DegreeVector& l);

// omega_kappa(t) = prod_j sign sin(2^{kappa_j + 1} pi t_j), evaluated from the
// dyadic position of t. Throws BoundaryError when some 2^{kappa_j+1} t_j is an
// integer.
int rademacher_eval(const MultiIndex& kappa, std::span<const double> t);

struct KhintchineResult {
  double l2 = 0;   // (sum a_kappa^2)^{1/2}
  double lp = 0;   // ‖sum a_kappa omega_kappa‖_{L_p}
  double ratio() const { return lp / l2; }
};

// a is indexed like enum_box(k). The Rademacher sum is constant on the cells
// of level k + e, so its L_p norm is evaluated exactly from those cell values.
// Requires 1 <= p < inf.
KhintchineResult khintchine_check(const std::vector<double>& a, const MultiIndex& k, double p);
// Cell values of the Rademacher sum, row-major over the level-(k+e) cells.
std::vector<double> rademacher_sum_cells(const std::vector<double>& a, const MultiIndex& k);

enum class FunctionFamily { coefficients, multiscale, sparse, steps };
std::string to_string(FunctionFamily f);
FunctionFamily function_family_from_string(const std::string& s);

// A random test function of the given family on the grid, with detail
// content only up to level k.
GridFunction random_test_function(FunctionFamily family, const Grid& grid, const MultiIndex& k, const DegreeVector& l,
                                  Rng& rng);

struct LPSweepConfig {
  int dim = 1;
  DegreeVector degree{1};
  int level = 6;
  std::vector<double> p_values{1.5, 3.0, 4.0};
  int trials = 200;
  int sign_draws = 50;
  std::uint64_t seed = 1;
  std::vector<FunctionFamily> families{FunctionFamily::coefficients, FunctionFamily::multiscale, FunctionFamily::sparse,
                                       FunctionFamily::steps};
};

// One (trial, p) measurement. Every ratio is normalized by ‖E_k f‖_p.
struct LPSweepRow {
  int trial = 0;
  FunctionFamily family = FunctionFamily::coefficients;
  double p = 0;
  int level = 0;
  double square_ratio = 0;  // ‖S f‖_p / ‖f‖_p, NaN for p <= 1
  double pstar_ratio = 0;   // ‖f‖_p / (sum ‖E_kappa f‖_p^{p*})^{1/p*}
  double sign_min = 0;      // min over sign draws of ‖sum sigma E_kappa f‖_p / ‖f‖_p
  double sign_max = 0;
};

struct Stats {
  double min = 0;
  double max = 0;
  double mean = 0;
  int count = 0;
  void add(double v);
};

struct LPReport {
  double p = 0;
  int level = 0;
  Stats square_ratio;
  Stats pstar_ratio;
  Stats sign_min;
  Stats sign_max;
};

// Trials run in parallel, each with its own generator derived from (seed,
// trial); rows are ordered by trial and then by p.
std::vector<LPSweepRow> lp_sweep(const LPSweepConfig& cfg);
std::vector<LPReport> summarize(const std::vector<LPSweepRow>& rows);

}  // namespace mra
