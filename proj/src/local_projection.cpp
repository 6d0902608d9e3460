#include "mra/local_projection.hpp"

#include <cmath>

#include "mra/error.hpp"
#include "mra/quadrature.hpp"

namespace mra {

double LocalPoly::eval(std::span<const double> x) const {
  const int d = cube.dim();
  std::vector<std::vector<double>> phi(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const double scale = std::ldexp(1.0, cube.level[sj]);
    const double y = x[sj] * scale - static_cast<double>(cube.position[sj]);
    if (y < 0.0 || y > 1.0) return 0.0;
    phi[sj].resize(static_cast<std::size_t>(degree[sj]) + 1);
    legendre_eval_all(degree[sj], y, phi[sj].data());
    for (double& v : phi[sj]) v *= std::sqrt(scale);
  }
  double s = 0.0;
  std::vector<int> lam(static_cast<std::size_t>(d), 0);
  for (double c : coeffs) {
    double p = c;
    for (int j = 0; j < d; ++j) p *= phi[static_cast<std::size_t>(j)][static_cast<std::size_t>(lam[static_cast<std::size_t>(j)])];
    s += p;
    for (int j = d - 1; j >= 0; --j) {
      if (++lam[static_cast<std::size_t>(j)] <= degree[static_cast<std::size_t>(j)]) break;
      lam[static_cast<std::size_t>(j)] = 0;
    }
  }
  return s;
}

LocalPoly local_project(const GridFunction& f, const DyadicCube& cube, const DegreeVector& l) {
  const Grid& grid = f.grid();
  const int d = grid.dim();
  if (cube.dim() != d || l.dim() != d) throw InvalidArgument("cube, degree and grid dimensions differ");
  if (!cube.inside_unit_cube()) throw DomainError("cube " + cube.level.str() + " lies outside the unit cube");
  if (!cube.level.leq(MultiIndex::filled(d, grid.level())))
    throw ResolutionError("cube level " + cube.level.str() + " is finer than grid level " + std::to_string(grid.level()));
  if (!grid.exact_for_degree(l)) throw InvalidArgument("grid quadrature is not exact for degree 2l on this cube");

  // per-axis sample range of the cube and basis values at those samples
  std::vector<int> g0(static_cast<std::size_t>(d)), len(static_cast<std::size_t>(d));
  std::vector<std::vector<double>> basis(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const int per = grid.nodes_per_cell(j) << (grid.level() - cube.level[sj]);
    g0[sj] = static_cast<int>(cube.position[sj]) * per;
    len[sj] = per;
    const double scale = std::ldexp(1.0, cube.level[sj]);
    const auto nf = static_cast<std::size_t>(l[sj]) + 1;
    basis[sj].resize(static_cast<std::size_t>(per) * nf);
    for (int t = 0; t < per; ++t) {
      const double y = grid.coordinate(j, g0[sj] + t) * scale - static_cast<double>(cube.position[sj]);
      legendre_eval_all(l[sj], y, basis[sj].data() + static_cast<std::size_t>(t) * nf);
      for (std::size_t i = 0; i < nf; ++i) basis[sj][static_cast<std::size_t>(t) * nf + i] *= std::sqrt(scale);
    }
  }

  LocalPoly out{cube, l, std::vector<double>(static_cast<std::size_t>(poly_dim(l)), 0.0)};
  std::vector<int> t(static_cast<std::size_t>(d), 0), g(static_cast<std::size_t>(d)), lam(static_cast<std::size_t>(d));
  const auto vals = f.values();
  while (true) {
    double w = 1.0;
    for (int j = 0; j < d; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      g[sj] = g0[sj] + t[sj];
      w *= grid.weight(j, g[sj]);
    }
    const double fw = w * vals[grid.flatten(g.data())];
    std::fill(lam.begin(), lam.end(), 0);
    for (double& c : out.coeffs) {
      double p = fw;
      for (int j = 0; j < d; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        p *= basis[sj][static_cast<std::size_t>(t[sj]) * (static_cast<std::size_t>(l[sj]) + 1) + static_cast<std::size_t>(lam[sj])];
      }
      c += p;
      for (int j = d - 1; j >= 0; --j) {
        if (++lam[static_cast<std::size_t>(j)] <= l[static_cast<std::size_t>(j)]) break;
        lam[static_cast<std::size_t>(j)] = 0;
      }
    }
    int j = d - 1;
    for (; j >= 0; --j) {
      if (++t[static_cast<std::size_t>(j)] < len[static_cast<std::size_t>(j)]) break;
      t[static_cast<std::size_t>(j)] = 0;
    }
    if (j < 0) break;
  }
  return out;
}

}  // namespace mra
