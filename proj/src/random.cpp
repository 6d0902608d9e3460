#include "mra/random.hpp"

#include <cmath>

#include "mra/error.hpp"

namespace mra {

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

PiecewisePoly random_piecewise_poly(const MultiIndex& level, const DegreeVector& l, Rng& rng) {
  PiecewisePoly p{level, l, {}};
  std::normal_distribution<double> normal;
  p.coeffs.resize(p.cell_count() * p.block_size());
  for (double& c : p.coeffs) c = normal(rng);
  return p;
}

GridFunction random_nodal(const Grid& grid, Rng& rng) {
  GridFunction f(grid);
  std::normal_distribution<double> normal;
  for (double& v : f.values()) v = normal(rng);
  return f;
}

GridFunction random_multiscale(const Grid& grid, const MultiIndex& k, const DegreeVector& l, double decay, Rng& rng) {
  std::normal_distribution<double> normal;
  Decomposition dec{grid, l, IndexSet::box(k), {}};
  for (const auto& kappa : enum_box(k)) {
    DetailCoeffs b{kappa, l, {}};
    b.coeffs.resize(b.cell_count() * b.functions());
    const double scale = std::exp2(-decay * kappa.sum());
    for (double& c : b.coeffs) c = scale * normal(rng);
    dec.blocks.emplace(kappa, std::move(b));
  }
  return synthesize(dec);
}

GridFunction random_sparse(const Grid& grid, const MultiIndex& k, const DegreeVector& l, int terms, Rng& rng) {
  if (terms < 1) throw InvalidArgument("terms must be >= 1");
  std::normal_distribution<double> normal;
  const auto levels = enum_box(k);
  Decomposition dec{grid, l, IndexSet::box(k), {}};
  for (int t = 0; t < terms; ++t) {
    const auto& kappa = levels[std::uniform_int_distribution<std::size_t>(0, levels.size() - 1)(rng)];
    auto it = dec.blocks.find(kappa);
    if (it == dec.blocks.end()) {
      DetailCoeffs b{kappa, l, {}};
      b.coeffs.assign(b.cell_count() * b.functions(), 0.0);
      it = dec.blocks.emplace(kappa, std::move(b)).first;
    }
    auto& c = it->second.coeffs;
    c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)] += normal(rng);
  }
  return synthesize(dec);
}

GridFunction random_steps(const Grid& grid, const MultiIndex& k, Rng& rng) {
  const int d = grid.dim();
  std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const int n = 1 << k[static_cast<std::size_t>(j)];
    int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int b = std::uniform_int_distribution<int>(a + 1, n)(rng);
    lo[static_cast<std::size_t>(j)] = std::ldexp(a, -k[static_cast<std::size_t>(j)]);
    hi[static_cast<std::size_t>(j)] = std::ldexp(b, -k[static_cast<std::size_t>(j)]);
  }
  return GridFunction::sample(grid, [&](std::span<const double> x) {
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] < lo[j] || x[j] > hi[j]) return 0.0;
    return 1.0;
  });
}

}  // namespace mra
