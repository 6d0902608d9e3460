#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mra/basis.hpp"
#include "mra/dyadic.hpp"
#include "mra/error.hpp"
#include "mra/random.hpp"
#include "mra/widths.hpp"

using namespace mra;

namespace {

SmoothnessParams params(std::vector<double> alpha, double p, double theta = kInfinity) {
  SmoothnessParams s;
  s.alpha = std::move(alpha);
  s.p = p;
  s.theta = theta;
  return s;
}

// 1D detail dimension with degree l
std::uint64_t r1(int k, int l) { return k == 0 ? l + 1 : (std::uint64_t{1} << (k - 1)) * (l + 1); }

}  // namespace

TEST(ChooseBeta, Examples) {
  EXPECT_EQ(choose_beta(params({1, 1}, 2), 2), (std::vector<double>{1, 1}));
  const auto b = choose_beta(params({1, 2}, 3), 3);
  EXPECT_DOUBLE_EQ(b[0], 1.0);
  EXPECT_DOUBLE_EQ(b[1], 1.5);
  EXPECT_DOUBLE_EQ(choose_beta(params({1, 3}, 2), 2)[1], 2.0);
  // p=1, q=2 shifts alpha by 1/2: beta_1 in (1, 1.5 / 0.5)
  EXPECT_DOUBLE_EQ(choose_beta(params({1, 2}, 1), 2)[1], 2.0);
  EXPECT_THROW(choose_beta(params({0.3, 1}, 1), 2), InvalidArgument);
}

TEST(ChooseBeta, BudgetedCaseStaysAdmissible) {
  const auto s = params({1, 2}, 2);
  const auto b = choose_beta(s, 4);
  EXPECT_GT(b[1], 1.0);
  EXPECT_LT(b[1], (2 - 0.5) / (1 - 0.5));
  EXPECT_NO_THROW(budget_plan(6, b, s, 4));
}

TEST(WidthExponent, HandExpanded) {
  struct Row {
    std::vector<double> alpha;
    double p, q, theta;
    WidthCase which;
    double rate, log_power;
  };
  const std::vector<Row> rows = {
      {{1, 1}, 2, 2, 2, WidthCase::truncation, 1.0, 1.0},
      {{1, 1}, 1, 2, kInfinity, WidthCase::truncation, 0.5, 1.0},
      {{2, 2, 3}, 3, 1.5, 1, WidthCase::truncation, 2.0, 2.0},
      {{1, 2}, 2, 2, kInfinity, WidthCase::truncation, 1.0, 0.0},
      {{1, 1}, 2, 4, kInfinity, WidthCase::budgeted, 1.0, 1.5},
      {{2, 2}, 1, 4, 4, WidthCase::budgeted, 1.5, 1.75},
      {{1.5, 1.5, 1.5}, 1.5, 3, 3, WidthCase::budgeted, 1.5 - 1 / 6.0, 2 * (1.5 - 1 / 6.0 + 1 / 6.0)},
  };
  for (const auto& r : rows) {
    const auto e = width_exponent(params(r.alpha, r.p, r.theta), r.q);
    EXPECT_EQ(e.which, r.which);
    EXPECT_NEAR(e.rate, r.rate, 1e-14);
    EXPECT_NEAR(e.log_power, r.log_power, 1e-14);
  }
  EXPECT_THROW(width_exponent(params({0.5, 0.5}, 1), 4), InvalidArgument);
}

TEST(CrossDimension, MatchesDirectCount) {
  for (int l : {0, 1}) {
    for (int r = 1; r <= 9; ++r) {
      std::uint64_t one = 0, two = 0;
      for (int a = 0; a <= r; ++a) {
        one += r1(a, l);
        for (int b = 0; a + b <= r; ++b) two += r1(a, l) * r1(b, l);
      }
      EXPECT_EQ(cross_dimension({1.0}, r, DegreeVector{l}), one);
      EXPECT_EQ(cross_dimension({1.0, 1.0}, r, DegreeVector{l, l}), two);
    }
  }
  EXPECT_EQ(cross_dimension({1.0}, 7, DegreeVector{0}), 128u);
}

TEST(CrossDimension, LawHoldsInBand) {
  for (int d = 1; d <= 3; ++d) {
    for (int l : {0, 1}) {
      const auto rows = dimension_law(std::vector<double>(d, 1.0), DegreeVector::filled(d, l), 4, 14);
      double lo = kInfinity, hi = 0;
      for (const auto& row : rows) {
        lo = std::min(lo, row.ratio());
        hi = std::max(hi, row.ratio());
      }
      EXPECT_LE(hi / lo, 4.0) << "d=" << d << " l=" << l;
    }
  }
  // beta > 1 off the minimal axis leaves the growth of the one-axis law
  const auto rows = dimension_law({1.0, 1.5}, DegreeVector{0, 0}, 4, 14);
  EXPECT_LE(rows.back().ratio() / rows.front().ratio(), 4.0);
}

TEST(Truncation, HaarIndicatorIsExact) {
  const auto g = Grid::for_degree(1, 5, DegreeVector{0});
  const auto f = GridFunction::sample(g, [](auto x) { return x[0] < 0.5 ? 1.0 : 0.0; });
  for (int r = 1; r <= 4; ++r) {
    const auto pt = truncation_error(f, {1.0}, r, 2.0, DegreeVector{0});
    EXPECT_LE(pt.error, 1e-14);
    EXPECT_EQ(pt.n, std::uint64_t{1} << r);
  }
}

TEST(Truncation, CrossFunctionHasNoTail) {
  Rng rng(11);
  const DegreeVector l{1, 1};
  const auto g = Grid::for_degree(2, 5, l);
  const auto f = random_sparse(g, MultiIndex{2, 1}, l, 6, rng) + random_sparse(g, MultiIndex{0, 3}, l, 6, rng);
  EXPECT_LE(truncation_error(f, {1.0, 1.0}, 3, 2.0, l).error, 1e-10);
  EXPECT_GT(truncation_error(f, {1.0, 1.0}, 2, 2.0, l).error, 1e-3);
}

TEST(Truncation, ExtremalMatchesGeometricSums) {
  const auto s = params({1, 1}, 2, 2);
  const int K = 6;
  const auto g = Grid::for_degree(2, K, s.projection_degree());
  const auto ex = synthesize_extremal(s, g, MultiIndex{K, K}, 5);
  std::vector<int> rs{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  const auto curve = truncation_curve(ex.dec, {1.0, 1.0}, rs, 2.0);
  double prev = kInfinity;
  for (const auto& pt : curve) {
    double sq = 0;
    for (int a = 0; a <= K; ++a)
      for (int b = 0; b <= K; ++b)
        if (a + b > pt.r) sq += std::pow(4.0, -(a + b));
    EXPECT_NEAR(pt.error * pt.error, sq, 1e-8);
    EXPECT_NEAR(pt.error * pt.error / sq, 1.0, 1e-10);
    EXPECT_LE(pt.error, prev);
    prev = pt.error;
  }
}

TEST(Truncation, UnresolvedSumMatchesBruteForce) {
  const std::vector<double> alpha{1.0, 1.5};
  const std::vector<double> beta{1.0, 1.25};
  for (int r : {2, 5, 9}) {
    for (int K : {3, 6}) {
      double sq = 0;
      for (int a = 0; a < 80; ++a)
        for (int b = 0; b < 80; ++b)
          if ((a > K || b > K) && a + 1.25 * b > r) sq += std::pow(4.0, -(a + 1.5 * b));
      EXPECT_NEAR(extremal_unresolved_sq(alpha, beta, r, MultiIndex{K, K}) / sq, 1.0, 1e-12);
    }
  }
  // d=1: sum over k > max(r, K) of 4^-k
  EXPECT_NEAR(extremal_unresolved_sq({1.0}, {1.0}, 4, MultiIndex{6}), std::pow(4.0, -7) / 0.75, 1e-18);
}

TEST(TailModel, ExponentArithmetic) {
  // c = 2, theta = inf, p = q = 2: 2^-r r^{1/2}
  EXPECT_NEAR(tail_model(params({1, 1}, 2), 2, 9), std::exp2(-9) * std::sqrt(9.0), 1e-16);
  // p < q shifts the rate by 1/p - 1/q
  EXPECT_NEAR(tail_model(params({1}, 1), 2, 6), std::exp2(-3), 1e-16);
  // q < p uses alpha and p* = 2
  EXPECT_NEAR(tail_model(params({2, 2}, 3, 4), 1.5, 5), std::exp2(-10) * std::pow(5.0, 0.25), 1e-16);
}

TEST(TailModel, ExtremalRatioBoundedAndZeroFunction) {
  const auto s = params({1}, 2, 2);
  const int K = 12;
  const auto g = Grid::for_degree(1, K, s.projection_degree());
  const auto ex = synthesize_extremal(s, g, MultiIndex{K}, 3);
  std::vector<int> rs;
  for (int r = 1; r <= 10; ++r) rs.push_back(r);
  const auto curve = truncation_curve(ex.dec, {1.0}, rs, 2.0);
  for (const auto& pt : curve) {
    const double ratio = pt.error / tail_model(s, 2.0, pt.r);
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 0.6);
  }
  const GridFunction zero(g);
  EXPECT_EQ(truncation_error(zero, {1.0}, 3, 2.0, DegreeVector{0}).error, 0.0);
}

TEST(BudgetPlan, AllocationAndTotals) {
  const auto s = params({1, 2}, 2);
  const double q = 4;
  const auto beta = choose_beta(s, q);
  const auto l = s.projection_degree();
  double lo = kInfinity, hi = 0;
  for (int r = 4; r <= 12; ++r) {
    const auto plan = budget_plan(r, beta, s, q);
    EXPECT_GT(plan.gamma, 0);
    EXPECT_LT(plan.gamma, 1.0 / 3);
    EXPECT_GT(plan.mu - plan.gamma / 2, 0);
    EXPECT_GT(plan.gamma_prime, 0);
    EXPECT_LT(plan.gamma_prime, plan.gamma);
    EXPECT_GT(plan.epsilon - plan.gamma_prime / 2, 0);
    EXPECT_EQ(plan.j0, static_cast<int>(std::floor(r / (3 * plan.gamma))));
    std::uint64_t sum = 0;
    for (const auto& [kappa, n] : plan.allocation) {
      EXPECT_GE(n, 1u);
      EXPECT_LE(n, detail_dim(kappa, l));
      EXPECT_FALSE(within_cross(kappa, beta, r));
      EXPECT_TRUE(within_cross(kappa, beta, r + plan.j0));
      sum += n;
    }
    EXPECT_EQ(sum, plan.budget);
    EXPECT_EQ(plan.cross_dim, cross_dimension(beta, r, l));
    lo = std::min(lo, plan.audit_ratio);
    hi = std::max(hi, plan.audit_ratio);
  }
  EXPECT_LE(hi / lo, 4.0);
}

TEST(BudgetPlan, EqualSmoothnessAndHypotheses) {
  const auto s = params({1, 1}, 2);
  const auto plan = budget_plan(5, {1.0, 1.0}, s, 4);
  EXPECT_EQ(plan.epsilon, 1.0);
  EXPECT_DOUBLE_EQ(plan.gamma, 1.0 / 6);
  EXPECT_DOUBLE_EQ(plan.gamma_prime, 1.0 / 12);
  EXPECT_EQ(plan.j0, 10);
  EXPECT_THROW(budget_plan(5, {1.0, 1.0}, s, 1.5), InvalidArgument);
  EXPECT_THROW(budget_plan(5, {1.0, 1.0}, params({0.5, 0.5}, 2), 4), InvalidArgument);
  EXPECT_THROW(budget_plan(5, {1.0, 2.5}, params({1, 2}, 2), 4), InvalidArgument);
  EXPECT_THROW(budget_plan(5, {1.2, 1.5}, params({1, 2}, 2), 4), InvalidArgument);
}

TEST(RateFit, SyntheticData) {
  std::vector<std::pair<double, double>> pts, logged;
  for (int r = 4; r <= 12; ++r) {
    const double n = std::exp2(r);
    pts.emplace_back(n, 1 / n);
    logged.emplace_back(n, std::sqrt(std::log(n)) / n);
  }
  const auto a = rate_fit(pts);
  EXPECT_NEAR(a.slope, -1, 1e-6);
  EXPECT_NEAR(a.log_coefficient, 0, 1e-6);
  EXPECT_LT(a.rms_residual, 1e-10);
  const auto b = rate_fit(logged);
  EXPECT_NEAR(b.slope, -1, 1e-6);
  EXPECT_NEAR(b.log_coefficient, 0.5, 1e-6);
}

TEST(RateFit, DegenerateInput) {
  EXPECT_THROW(rate_fit({{10, 1}, {20, 1}, {40, 1}}), FitError);
  EXPECT_THROW(rate_fit({{10, 1}, {20, 1}, {20, 1}, {40, 1}}), FitError);
  EXPECT_THROW(rate_fit({{10, 1}, {20, 0}, {30, 1}, {40, 1}}), FitError);
  EXPECT_THROW(rate_fit({{1.5, 1}, {20, 1}, {30, 1}, {40, 1}}), FitError);
}

TEST(WidthExperiment, OneDimensionalRate) {
  WidthExperimentConfig cfg;
  cfg.params = params({1}, 2, 2);
  cfg.level = 8;
  const auto res = run_width_experiment(cfg);
  EXPECT_TRUE(res.analytic_tail);
  ASSERT_EQ(res.rows.size(), 7u);
  for (const auto& row : res.rows) {
    // alpha = 1 gives piecewise linear blocks
    EXPECT_EQ(row.n, std::uint64_t{2} << row.r);
    EXPECT_NEAR(row.error, std::exp2(-row.r) / std::sqrt(3.0), 1e-12);
  }
  EXPECT_NEAR(res.fit.slope, -1, 1e-8);
}

TEST(WidthExperiment, TwoDimensionalIsResolutionIndependent) {
  WidthExperimentConfig cfg;
  cfg.params = params({1, 1}, 2, 2);
  cfg.level = 5;
  cfg.r_max = 8;
  const auto coarse = run_width_experiment(cfg);
  cfg.level = 7;
  const auto fine = run_width_experiment(cfg);
  for (std::size_t i = 0; i < coarse.rows.size(); ++i)
    EXPECT_NEAR(coarse.rows[i].error / fine.rows[i].error, 1.0, 1e-10);
  cfg.q = 4;
  cfg.params = params({2, 2}, 1);
  EXPECT_THROW(run_width_experiment(cfg), Unsupported);
}
