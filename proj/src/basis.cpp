#include "mra/basis.hpp"

#include <cmath>
#include <numbers>

#include "mra/error.hpp"
#include "mra/quadrature.hpp"

namespace mra {

double LegendreSeries::eval(double x) const {
  if (coeffs.empty()) return 0.0;
  std::vector<double> v(coeffs.size());
  legendre_eval_all(static_cast<int>(coeffs.size()) - 1, x, v.data());
  double s = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) s += coeffs[m] * v[m];
  return s;
}

std::vector<LegendreSeries> scaling_basis_1d(int l) {
  if (l < 0) throw InvalidArgument("degree must be >= 0");
  std::vector<LegendreSeries> out(static_cast<std::size_t>(l) + 1);
  for (int k = 0; k <= l; ++k) {
    out[static_cast<std::size_t>(k)].coeffs.assign(static_cast<std::size_t>(l) + 1, 0.0);
    out[static_cast<std::size_t>(k)].coeffs[static_cast<std::size_t>(k)] = 1.0;
  }
  return out;
}

double HalfCellPoly::eval(double x) const {
  if (x < 0.0 || x > 1.0) return 0.0;
  const bool right_half = x > 0.5;
  const auto& c = right_half ? right : left;
  const double y = right_half ? 2.0 * x - 1.0 : 2.0 * x;
  std::vector<double> v(c.size());
  legendre_eval_all(static_cast<int>(c.size()) - 1, y, v.data());
  double s = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) s += c[m] * v[m];
  return std::numbers::sqrt2 * s;
}

std::vector<double> HalfCellPoly::coordinates() const {
  std::vector<double> v = left;
  v.insert(v.end(), right.begin(), right.end());
  return v;
}

WaveletBasis1D wavelet_basis_1d(int l) {
  if (l < 0) throw InvalidArgument("degree must be >= 0");
  const auto n = static_cast<std::size_t>(l) + 1;
  const std::size_t dim = 2 * n;

  // Columns of C: the coarse Legendre polynomials in half-cell coordinates,
  //   C[(h, m'), m] = int_{half h} L_m(x) sqrt(2) L_m'(2x - h) dx.
  std::vector<double> nodes, weights;
  gauss_legendre_01(l + 1, nodes, weights);
  std::vector<double> C(dim * n, 0.0);
  std::vector<double> coarse(n), fine(n);
  for (int h = 0; h < 2; ++h) {
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double y = nodes[q];
      legendre_eval_all(l, 0.5 * (h + y), coarse.data());
      legendre_eval_all(l, y, fine.data());
      for (std::size_t mp = 0; mp < n; ++mp)
        for (std::size_t m = 0; m < n; ++m)
          C[(static_cast<std::size_t>(h) * n + mp) * n + m] += 0.5 * weights[q] * coarse[m] * std::numbers::sqrt2 * fine[mp];
    }
  }

  std::vector<std::vector<double>> accepted;
  auto project_out = [&](std::vector<double>& v) {
    // remove the coarse space, then the already accepted complement vectors
    for (std::size_t m = 0; m < n; ++m) {
      double dotc = 0.0;
      for (std::size_t a = 0; a < dim; ++a) dotc += C[a * n + m] * v[a];
      for (std::size_t a = 0; a < dim; ++a) v[a] -= dotc * C[a * n + m];
    }
    for (const auto& u : accepted) {
      double dotu = 0.0;
      for (std::size_t a = 0; a < dim; ++a) dotu += u[a] * v[a];
      for (std::size_t a = 0; a < dim; ++a) v[a] -= dotu * u[a];
    }
  };
  for (std::size_t axis = 0; axis < dim && accepted.size() < n; ++axis) {
    std::vector<double> v(dim, 0.0);
    v[axis] = 1.0;
    project_out(v);
    project_out(v);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (double& x : v) x /= norm;
    for (std::size_t a = dim; a-- > 0;) {
      if (std::abs(v[a]) > 1e-12) {
        if (v[a] < 0.0)
          for (double& x : v) x = -x;
        break;
      }
    }
    accepted.push_back(std::move(v));
  }
  if (accepted.size() != n) throw std::logic_error("wavelet construction lost rank");

  WaveletBasis1D out;
  out.degree = l;
  for (const auto& v : accepted) {
    HalfCellPoly p;
    p.left.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
    p.right.assign(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
    out.functions.push_back(std::move(p));
  }
  return out;
}

DetailBasis::DetailBasis(unsigned directions, DegreeVector degree) : directions_(directions), degree_(std::move(degree)) {
  const int d = degree_.dim();
  if (d < 1) throw InvalidArgument("dimension must be >= 1");
  if (d < 32 && (directions_ >> d) != 0) throw InvalidArgument("direction set refers to axes beyond the dimension");
  for (int j = 0; j < d; ++j) {
    if (degree_[static_cast<std::size_t>(j)] < 0) throw InvalidArgument("degrees must be >= 0");
    wavelets_.push_back((directions_ >> j) & 1u ? wavelet_basis_1d(degree_[static_cast<std::size_t>(j)]) : WaveletBasis1D{});
  }
}

std::vector<int> DetailBasis::factor_index(int i) const {
  const int d = dim();
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int j = d - 1; j >= 0; --j) {
    const int nj = degree_[static_cast<std::size_t>(j)] + 1;
    idx[static_cast<std::size_t>(j)] = i % nj;
    i /= nj;
  }
  return idx;
}

double DetailBasis::eval_factor(int axis, int index, double x) const {
  if (x < 0.0 || x > 1.0) return 0.0;
  const auto j = static_cast<std::size_t>(axis);
  if ((directions_ >> axis) & 1u) return wavelets_[j].functions[static_cast<std::size_t>(index)].eval(x);
  return legendre_eval(index, x);
}

double DetailBasis::eval(int i, std::span<const double> x) const {
  const auto idx = factor_index(i);
  double p = 1.0;
  for (int j = 0; j < dim(); ++j) p *= eval_factor(j, idx[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(j)]);
  return p;
}

DetailBasis detail_basis(unsigned directions, const DegreeVector& l) { return DetailBasis(directions, l); }

std::uint64_t detail_dim(const MultiIndex& kappa, const DegreeVector& l) {
  if (kappa.dim() != l.dim()) throw InvalidArgument("kappa and degree dimensions differ");
  int shift = 0;
  for (int k : kappa) {
    if (k < 0) throw InvalidArgument("kappa must be non-negative");
    shift += k > 0 ? k - 1 : 0;
  }
  const auto root = static_cast<std::uint64_t>(poly_dim(l));
  if (shift >= 63 || (root >> (63 - shift)) != 0) throw std::overflow_error("detail dimension exceeds 64 bits");
  return root << shift;
}

double detail_dim_real(const MultiIndex& kappa, const DegreeVector& l) {
  int shift = 0;
  for (int k : kappa) shift += k > 0 ? k - 1 : 0;
  return std::ldexp(static_cast<double>(poly_dim(l)), shift);
}

AxisTable legendre_table(const Grid& grid, int axis, int level, int degree) {
  if (level < 0 || level > grid.level()) throw ResolutionError("level beyond grid resolution");
  AxisTable t;
  t.cells = 1 << level;
  t.functions = degree + 1;
  t.samples_per_cell = grid.samples_per_axis(axis) / t.cells;
  t.values.resize(static_cast<std::size_t>(grid.samples_per_axis(axis)) * static_cast<std::size_t>(t.functions));
  const double scale = std::ldexp(1.0, level);
  const double amp = std::sqrt(scale);
  for (int g = 0; g < grid.samples_per_axis(axis); ++g) {
    const int cell = g / t.samples_per_cell;
    double* row = t.values.data() + static_cast<std::size_t>(g) * static_cast<std::size_t>(t.functions);
    legendre_eval_all(degree, grid.coordinate(axis, g) * scale - cell, row);
    for (int m = 0; m < t.functions; ++m) row[m] *= amp;
  }
  return t;
}

AxisTable detail_table(const Grid& grid, int axis, int kappa_j, const WaveletBasis1D& wavelets) {
  if (kappa_j == 0) return legendre_table(grid, axis, 0, wavelets.degree);
  const int coarse = kappa_j - 1;
  if (kappa_j > grid.level()) throw ResolutionError("level beyond grid resolution");
  AxisTable t;
  t.cells = 1 << coarse;
  t.functions = static_cast<int>(wavelets.functions.size());
  t.samples_per_cell = grid.samples_per_axis(axis) / t.cells;
  t.values.resize(static_cast<std::size_t>(grid.samples_per_axis(axis)) * static_cast<std::size_t>(t.functions));
  const double scale = std::ldexp(1.0, coarse);
  const double amp = std::sqrt(scale);
  for (int g = 0; g < grid.samples_per_axis(axis); ++g) {
    const int cell = g / t.samples_per_cell;
    const double y = grid.coordinate(axis, g) * scale - cell;
    for (int i = 0; i < t.functions; ++i)
      t.values[static_cast<std::size_t>(g) * static_cast<std::size_t>(t.functions) + static_cast<std::size_t>(i)] =
          amp * wavelets.functions[static_cast<std::size_t>(i)].eval(y);
  }
  return t;
}

}  // namespace mra
