#include <gtest/gtest.h>

#include "mra/error.hpp"
#include "mra/projectors.hpp"
#include "mra/random.hpp"
#include "mra/reference.hpp"
#include "mra/verification.hpp"

using namespace mra;

TEST(HaarPyramid, SingleDetailAndRoot) {
  const auto g = Grid::for_degree(1, 2, DegreeVector{0});
  // +-1 on the two halves: one level-1 detail with coefficient 1
  const auto f = GridFunction::sample(g, [](auto x) { return x[0] < 0.5 ? -1.0 : 1.0; });
  const auto h = reference::haar_pyramid(f);
  EXPECT_NEAR(h.at(MultiIndex{0})[0], 0.0, 1e-15);
  EXPECT_NEAR(h.at(MultiIndex{1})[0], 1.0, 1e-15);
  for (double v : h.at(MultiIndex{2})) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(HaarPyramid, ThreeDimensionsMatchAnalyze) {
  Rng rng(2);
  const auto g = Grid::for_degree(3, 2, DegreeVector{0, 0, 0});
  const auto f = random_nodal(g, rng);
  const auto h = reference::haar_pyramid(f);
  const auto dec = analyze(f, IndexSet::box(MultiIndex{2, 2, 2}), DegreeVector{0, 0, 0});
  ASSERT_EQ(h.size(), dec.blocks.size());
  for (const auto& [k, b] : dec.blocks)
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) EXPECT_NEAR(b.coeffs[i], h.at(k)[i], 1e-12) << k.str();
}

TEST(VerifyProjectors, AllChecksPass) {
  for (const auto& l : {DegreeVector{0}, DegreeVector{2}, DegreeVector{0, 0}, DegreeVector{1, 0}}) {
    ProjectorCheckConfig cfg;
    cfg.degree = l;
    cfg.level = l.dim() == 1 ? 5 : 3;
    cfg.trials = 2;
    const auto rows = verify_projectors(cfg);
    const bool haar = l == DegreeVector::zeros(l.dim());
    EXPECT_EQ(rows.size(), haar ? 8u : 7u);
    for (const auto& r : rows) {
      EXPECT_TRUE(r.pass()) << r.name << " l=" << l.str() << " value=" << r.value;
      EXPECT_GT(r.cases, 0) << r.name;
    }
  }
}

TEST(VerifyProjectors, Errors) {
  ProjectorCheckConfig cfg;
  cfg.degree = DegreeVector{1};
  EXPECT_THROW(check_haar_oracle(cfg), InvalidArgument);
  cfg.trials = 0;
  EXPECT_THROW(check_parseval(cfg), InvalidArgument);
}
