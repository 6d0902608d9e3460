#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "mra/basis.hpp"
#include "mra/error.hpp"
#include "mra/projectors.hpp"
#include "mra/random.hpp"

using namespace mra;

namespace {

// Gram matrix of a list of functions on (0,1)^d using a level-1 Gauss grid,
// exact for products of piecewise polynomials of degree <= l on the halves.
Eigen::MatrixXd gram(int d, int l, const std::vector<std::function<double(std::span<const double>)>>& fs) {
  const Grid g(d, 1, std::vector<int>(static_cast<std::size_t>(d), l + 2));
  std::vector<GridFunction> s;
  for (const auto& f : fs) s.push_back(GridFunction::sample(g, f));
  Eigen::MatrixXd G(s.size(), s.size());
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b) G(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = inner_product(s[a], s[b]);
  return G;
}

}  // namespace

TEST(ScalingBasis, Examples) {
  const auto b0 = scaling_basis_1d(0);
  ASSERT_EQ(b0.size(), 1u);
  EXPECT_DOUBLE_EQ(b0[0].eval(0.3), 1.0);
  const auto b1 = scaling_basis_1d(1);
  ASSERT_EQ(b1.size(), 2u);
  EXPECT_NEAR(b1[1].eval(0.8), std::sqrt(3.0) * (2 * 0.8 - 1), 1e-15);
  std::vector<std::function<double(std::span<const double>)>> fs;
  for (const auto& p : scaling_basis_1d(4)) fs.push_back([p](std::span<const double> x) { return p.eval(x[0]); });
  EXPECT_LT((gram(1, 4, fs) - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(WaveletBasis, HaarForDegreeZero) {
  const auto w = wavelet_basis_1d(0);
  ASSERT_EQ(w.functions.size(), 1u);
  EXPECT_NEAR(w.functions[0].eval(0.2), -1.0, 1e-15);
  EXPECT_NEAR(w.functions[0].eval(0.7), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(w.functions[0].eval(1.5), 0.0);
}

TEST(WaveletBasis, CombinedGramIsIdentity) {
  for (int l = 0; l <= 5; ++l) {
    std::vector<std::function<double(std::span<const double>)>> fs;
    for (int m = 0; m <= l; ++m) fs.push_back([m](std::span<const double> x) { return legendre_eval(m, x[0]); });
    const auto w = wavelet_basis_1d(l);
    ASSERT_EQ(static_cast<int>(w.functions.size()), l + 1);
    for (const auto& p : w.functions) fs.push_back([p](std::span<const double> x) { return p.eval(x[0]); });
    const auto n = static_cast<Eigen::Index>(fs.size());
    EXPECT_LT((gram(1, l, fs) - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12) << "l=" << l;
  }
}

TEST(WaveletBasis, VanishingMoments) {
  const auto w = wavelet_basis_1d(1);
  const Grid g(1, 1, {3});
  for (const auto& p : w.functions) {
    const auto f = GridFunction::sample(g, [&](auto x) { return p.eval(x[0]); });
    const auto xf = GridFunction::sample(g, [&](auto x) { return x[0] * p.eval(x[0]); });
    EXPECT_NEAR(integral(f), 0.0, 1e-14);
    EXPECT_NEAR(integral(xf), 0.0, 1e-14);
  }
}

TEST(WaveletBasis, SignConvention) {
  for (int l = 0; l <= 4; ++l)
    for (const auto& p : wavelet_basis_1d(l).functions) {
      const auto c = p.coordinates();
      for (std::size_t a = c.size(); a-- > 0;)
        if (std::abs(c[a]) > 1e-12) {
          EXPECT_GT(c[a], 0.0);
          break;
        }
    }
}

TEST(DetailBasis, CountsAndTensorStructure) {
  EXPECT_EQ(detail_basis(1u, DegreeVector{0}).size(), 1);
  const auto b = detail_basis(1u, DegreeVector{0, 0});
  EXPECT_EQ(b.size(), 1);
  const std::vector<double> x{0.3, 0.9};
  EXPECT_NEAR(b.eval(0, x), -1.0, 1e-15);
  EXPECT_EQ(detail_basis(3u, DegreeVector{1, 1}).size(), 4);
  const auto root = detail_basis(0u, DegreeVector{1, 2});
  EXPECT_EQ(root.size(), 6);
  EXPECT_NEAR(root.eval(5, x), legendre_eval(1, 0.3) * legendre_eval(2, 0.9), 1e-14);
  const std::vector<double> outside{1.2, 0.5};
  EXPECT_EQ(root.eval(0, outside), 0.0);
  EXPECT_THROW(detail_basis(4u, DegreeVector{1, 1}), InvalidArgument);
}

TEST(DetailBasis, OrthonormalAndOrthogonalToRoot) {
  const DegreeVector l{1, 2};
  const auto root = detail_basis(0u, l);
  for (unsigned J = 1; J < 4; ++J) {
    const auto b = detail_basis(J, l);
    std::vector<std::function<double(std::span<const double>)>> fs;
    for (int i = 0; i < b.size(); ++i) fs.push_back([&b, i](std::span<const double> x) { return b.eval(i, x); });
    for (int i = 0; i < root.size(); ++i) fs.push_back([&root, i](std::span<const double> x) { return root.eval(i, x); });
    const auto n = static_cast<Eigen::Index>(fs.size());
    EXPECT_LT((gram(2, 2, fs) - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12) << "J=" << J;
  }
}

TEST(DetailDim, Examples) {
  EXPECT_EQ(detail_dim(MultiIndex{3}, DegreeVector{1}), 8u);
  EXPECT_EQ(detail_dim(MultiIndex{0, 0, 0}, DegreeVector{1, 2, 0}), 6u);
  EXPECT_EQ(detail_dim(MultiIndex{2, 1}, DegreeVector{0, 0}), 2u);
  EXPECT_EQ(detail_dim_real(MultiIndex{40, 40}, DegreeVector{1, 1}), std::ldexp(4.0, 78));
  EXPECT_THROW(detail_dim(MultiIndex{40, 40}, DegreeVector{1, 1}), std::overflow_error);
}

TEST(DetailDim, MatchesRankOfDetailProjector) {
  for (int d = 1; d <= 2; ++d)
    for (int deg = 0; deg <= 1; ++deg) {
      const DegreeVector l = DegreeVector::filled(d, deg);
      const auto g = Grid::for_degree(d, 2, l);
      for (const auto& kappa : enum_box(MultiIndex::filled(d, 2))) {
        // spanning set of the level-kappa piecewise polynomials
        PiecewisePoly p{kappa, l, {}};
        const std::size_t n = p.cell_count() * p.block_size();
        std::vector<GridFunction> images;
        for (std::size_t i = 0; i < n; ++i) {
          p.coeffs.assign(n, 0.0);
          p.coeffs[i] = 1.0;
          images.push_back(project_detail(to_grid(p, g), kappa, l));
        }
        Eigen::MatrixXd G(n, n);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            G(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = inner_product(images[a], images[b]);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
        const double top = es.eigenvalues().maxCoeff();
        int rank = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 1e-8 * top ? 1 : 0;
        EXPECT_EQ(static_cast<std::uint64_t>(rank), detail_dim(kappa, l)) << kappa.str() << " l=" << l.str();
      }
    }
}

TEST(DetailBasis, NormEquivalenceBandIsStableAcrossLevels) {
  Rng rng(21);
  const DegreeVector l{1, 1};
  const auto g = Grid::for_degree(2, 5, l);
  for (double p : {1.0, 2.0, 4.0}) {
    auto ratio = [&](const MultiIndex& kappa) {
      DetailCoeffs b{kappa, l, {}};
      b.coeffs.resize(b.cell_count() * b.functions());
      std::normal_distribution<double> normal;
      for (double& c : b.coeffs) c = normal(rng);
      double lp = 0.0;
      for (double c : b.coeffs) lp += std::pow(std::abs(c), p);
      lp = std::pow(lp, 1.0 / p);
      int shift = 0;
      for (int k : kappa) shift += k > 0 ? k - 1 : 0;
      // coefficients are orthonormal; the L_inf-normalized coordinates are
      // 2^{shift/2} times larger
      return std::exp2(shift * (0.5 - 1.0 / p)) * lp / lp_norm(synthesize_block(b, g), p);
    };
    double lo = 1e300, hi = 0.0;
    for (const auto& kappa : enum_box(MultiIndex{2, 2}))
      for (int t = 0; t < 10; ++t) {
        const double r = ratio(kappa);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    if (p == 2.0) {
      EXPECT_NEAR(lo, 1.0, 1e-12);
      EXPECT_NEAR(hi, 1.0, 1e-12);
    }
    for (const auto& kappa : enum_box(MultiIndex{5, 5}))
      for (int t = 0; t < 3; ++t) {
        const double r = ratio(kappa);
        EXPECT_GE(r, lo / 2) << "p=" << p << " " << kappa.str();
        EXPECT_LE(r, hi * 2) << "p=" << p << " " << kappa.str();
      }
  }
}
