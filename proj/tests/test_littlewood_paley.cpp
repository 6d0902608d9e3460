#include <gtest/gtest.h>

#include <cmath>

#include "mra/error.hpp"
#include "mra/littlewood_paley.hpp"

using namespace mra;

namespace {

GridFunction half_indicator(const Grid& g) {
  return GridFunction::sample(g, [](auto x) { return x[0] < 0.5 ? 1.0 : 0.0; });
}

}  // namespace

TEST(SquareFunction, HalfIndicatorIsFlat) {
  const auto g = Grid::for_degree(1, 3, DegreeVector{0});
  const auto s = square_function(analyze(half_indicator(g), IndexSet::box(MultiIndex{1}), DegreeVector{0}));
  for (double v : s.values()) EXPECT_NEAR(v, 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(SquareFunction, ConstantAndSingleBlock) {
  const auto g = Grid::for_degree(2, 2, DegreeVector{1, 1});
  const auto c = GridFunction::sample(g, [](auto) { return -3.0; });
  const auto sc = square_function(analyze(c, IndexSet::box(MultiIndex{2, 2}), DegreeVector{1, 1}));
  for (double v : sc.values()) EXPECT_NEAR(v, 3.0, 1e-13);
  Rng rng(1);
  const auto f = random_nodal(g, rng);
  auto dec = analyze(f, IndexSet::box(MultiIndex{2, 2}), DegreeVector{1, 1});
  const auto only = dec.blocks.at(MultiIndex{1, 2});
  dec.blocks.clear();
  dec.blocks.emplace(only.kappa, only);
  const auto s = square_function(dec);
  const auto e = synthesize(dec);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], std::abs(e[i]), 1e-14);
}

TEST(LpEquivalence, ParsevalAtTwoAndSingleBasisFunction) {
  Rng rng(2);
  const DegreeVector l{1, 0};
  const auto g = Grid::for_degree(2, 4, l);
  const MultiIndex k{4, 4};
  for (int t = 0; t < 5; ++t) {
    const auto f = random_test_function(FunctionFamily::multiscale, g, k, l, rng);
    EXPECT_NEAR(lp_equivalence(f, 2.0, k, l).ratio(), 1.0, 1e-10);
  }
  DetailCoeffs b{MultiIndex{3, 1}, l, {}};
  b.coeffs.assign(b.cell_count() * b.functions(), 0.0);
  b.coeffs[3] = 2.0;
  const auto f = synthesize_block(b, g);
  for (double p : {1.5, 3.0, 4.0}) EXPECT_NEAR(lp_equivalence(f, p, k, l).ratio(), 1.0, 1e-12);
  EXPECT_THROW(lp_equivalence(f, 1.0, k, l), InvalidArgument);
  EXPECT_THROW(lp_equivalence(f, INFINITY, k, l), InvalidArgument);
}

TEST(SignSeries, Examples) {
  const auto g = Grid::for_degree(1, 3, DegreeVector{0});
  const auto f = half_indicator(g);
  const MultiIndex k{1};
  const DegreeVector l{0};
  EXPECT_NEAR(sign_series(f, SignFamily::all_plus(k), 3.0, k, l), lp_norm(f, 3.0), 1e-14);
  // E_0 f = 1/2, E_1 f = +1/2 on the left half and -1/2 on the right half;
  // with signs (+,-) the sum is 0 on the left and 1 on the right
  const auto s = SignFamily::product({{1, -1}});
  for (double p : {1.5, 3.0}) EXPECT_NEAR(sign_series(f, s, p, k, l), std::pow(0.5, 1.0 / p), 1e-14);
  EXPECT_THROW(sign_series(f, s, 1.0, k, l), InvalidArgument);
}

TEST(SignSeries, TwoNormIsSignInvariantAndSignsAreInvolutions) {
  Rng rng(3);
  const DegreeVector l{1, 1};
  const auto g = Grid::for_degree(2, 3, l);
  const MultiIndex k{3, 3};
  const auto f = random_test_function(FunctionFamily::coefficients, g, k, l, rng);
  const double base = lp_norm(f, 2.0);
  for (int t = 0; t < 10; ++t) {
    const auto s = SignFamily::random_product(k, rng);
    EXPECT_NEAR(sign_series(f, s, 2.0, k, l), base, 1e-10 * base);
    const auto twice = apply_signs(apply_signs(f, s, k, l), s, k, l);
    EXPECT_LT(lp_norm(twice - f, 2.0), 1e-10 * base);
  }
}

TEST(SignFamily, ProductRuleAndTables) {
  const auto s = SignFamily::product({{1, -1, -1}, {-1, 1}});
  EXPECT_TRUE(s.product_form());
  EXPECT_EQ(s.sign(MultiIndex{1, 0}), 1);
  EXPECT_EQ(s.sign(MultiIndex{2, 1}), -1);
  EXPECT_THROW(s.sign(MultiIndex{3, 0}), InvalidArgument);
  EXPECT_THROW(SignFamily::product({{1, 0}}), InvalidArgument);
  const auto t = SignFamily::table({{MultiIndex{0}, 1}, {MultiIndex{1}, -1}});
  EXPECT_FALSE(t.product_form());
  EXPECT_EQ(t.sign(MultiIndex{1}), -1);
}

TEST(Rademacher, Examples) {
  const std::vector<double> a{0.25}, b{0.3}, c{0.5};
  EXPECT_EQ(rademacher_eval(MultiIndex{0}, a), 1);
  EXPECT_EQ(rademacher_eval(MultiIndex{1}, b), -1);
  EXPECT_THROW(rademacher_eval(MultiIndex{0}, c), BoundaryError);
  EXPECT_THROW(rademacher_eval(MultiIndex{3}, a), BoundaryError);
  const std::vector<double> t{0.3, 0.7};
  EXPECT_EQ(rademacher_eval(MultiIndex{1, 2}, t), rademacher_eval(MultiIndex{1}, std::vector<double>{0.3}) *
                                                      rademacher_eval(MultiIndex{2}, std::vector<double>{0.7}));
  // agrees with sign sin(2^{k+1} pi t) away from breakpoints
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    for (int kk = 0; kk < 8; ++kk) {
      const double s = std::sin(std::ldexp(M_PI, kk + 1) * x);
      if (std::abs(s) < 1e-9) continue;
      EXPECT_EQ(rademacher_eval(MultiIndex{kk}, std::vector<double>{x}), s > 0 ? 1 : -1);
    }
  }
}

namespace {

// L_p norm of the Rademacher sum by evaluating it at every cell midpoint.
double khintchine_oracle(const std::vector<double>& a, const MultiIndex& k, double p) {
  const int d = k.dim();
  const auto levels = enum_box(k);
  MultiIndex top = k;
  std::size_t cells = 1;
  for (int j = 0; j < d; ++j) {
    top[static_cast<std::size_t>(j)] = (1 << (k[static_cast<std::size_t>(j)] + 1)) - 1;
    cells <<= k[static_cast<std::size_t>(j)] + 1;
  }
  double s = 0.0;
  for (const auto& c : enum_box(top)) {
    std::vector<double> t(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) t[static_cast<std::size_t>(j)] = std::ldexp(c[static_cast<std::size_t>(j)] + 0.5, -(k[static_cast<std::size_t>(j)] + 1));
    double v = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) v += a[i] * rademacher_eval(levels[i], t);
    s += std::pow(std::abs(v), p);
  }
  return std::pow(s / static_cast<double>(cells), 1.0 / p);
}

}  // namespace

TEST(Khintchine, Examples) {
  EXPECT_NEAR(khintchine_check({1.0, 1.0}, MultiIndex{1}, 4.0).lp, std::pow(8.0, 0.25), 1e-15);
  const auto single = khintchine_check({0.0, -2.5, 0.0}, MultiIndex{2}, 3.0);
  EXPECT_NEAR(single.lp, 2.5, 1e-15);
  EXPECT_THROW(khintchine_check({1.0}, MultiIndex{1}, 2.0), InvalidArgument);
  EXPECT_THROW(khintchine_check({1.0, 1.0}, MultiIndex{1}, 0.5), InvalidArgument);
}

TEST(Khintchine, MatchesCellEnumerationAndIsBounded) {
  Rng rng(5);
  std::normal_distribution<double> normal;
  for (const auto& k : {MultiIndex{6}, MultiIndex{3, 4}, MultiIndex{2, 1, 2}}) {
    std::size_t n = 1;
    for (int kj : k) n *= static_cast<std::size_t>(kj) + 1;
    for (int t = 0; t < 10; ++t) {
      std::vector<double> a(n);
      for (double& x : a) x = normal(rng);
      for (double p : {1.0, 2.0, 4.0}) {
        const auto r = khintchine_check(a, k, p);
        EXPECT_NEAR(r.lp, khintchine_oracle(a, k, p), 1e-12 * r.l2);
        if (p == 2.0) EXPECT_NEAR(r.lp, r.l2, 1e-12 * r.l2);
        EXPECT_GT(r.ratio(), 0.1);
        EXPECT_LT(r.ratio(), 4.0);
      }
    }
  }
}

TEST(PStar, SingleBlockAndTwoNorm) {
  Rng rng(6);
  const DegreeVector l{1};
  const auto g = Grid::for_degree(1, 5, l);
  const MultiIndex k{5};
  const auto f = random_test_function(FunctionFamily::multiscale, g, k, l, rng);
  // at p = 2 the ratio is 1 by orthogonality
  EXPECT_NEAR(pstar_ratio(f, 2.0, k, l), 1.0, 1e-10);
  DetailCoeffs b{MultiIndex{2}, l, {}};
  b.coeffs.assign(b.cell_count() * b.functions(), 0.0);
  b.coeffs[1] = 1.0;
  for (double p : {1.0, 1.5, 3.0}) EXPECT_NEAR(pstar_ratio(synthesize_block(b, g), p, k, l), 1.0, 1e-12);
  EXPECT_THROW(pstar_ratio(f, 0.9, k, l), InvalidArgument);
}

TEST(LpSweep, DeterministicAndOrdered) {
  LPSweepConfig cfg;
  cfg.level = 3;
  cfg.trials = 8;
  cfg.sign_draws = 4;
  cfg.p_values = {1.0, 2.0, 3.0};
  const auto a = lp_sweep(cfg);
  const auto b = lp_sweep(cfg);
  ASSERT_EQ(a.size(), 24u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].trial, static_cast<int>(i / 3));
    EXPECT_EQ(a[i].pstar_ratio, b[i].pstar_ratio);
    if (a[i].p == 2.0) {
      EXPECT_NEAR(a[i].square_ratio, 1.0, 1e-10);
      EXPECT_NEAR(a[i].sign_max, 1.0, 1e-10);
    }
    if (a[i].p == 1.0) EXPECT_TRUE(std::isnan(a[i].square_ratio));
  }
  const auto rep = summarize(a);
  ASSERT_EQ(rep.size(), 3u);
  EXPECT_EQ(rep[0].pstar_ratio.count, 8);
  EXPECT_EQ(rep[0].square_ratio.count, 0);
}
