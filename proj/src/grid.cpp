#include "mra/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mra/error.hpp"
#include "mra/kernels.hpp"

namespace mra {

Grid::Grid(int dim, int level, std::vector<int> nodes_per_cell) : dim_(dim), level_(level), nodes_(std::move(nodes_per_cell)) {
  if (dim < 1) throw InvalidArgument("grid dimension must be >= 1");
  if (level < 0 || level > 20) throw InvalidArgument("grid level must be in [0, 20]");
  if (static_cast<int>(nodes_.size()) != dim) throw InvalidArgument("nodes_per_cell must have one entry per axis");
  for (int n : nodes_)
    if (n < 1) throw InvalidArgument("nodes_per_cell entries must be >= 1");
  rule_ = gauss_rule(nodes_);
  strides_.assign(static_cast<std::size_t>(dim), 1);
  size_ = 1;
  for (int j = dim - 1; j >= 0; --j) {
    strides_[static_cast<std::size_t>(j)] = size_;
    size_ *= static_cast<std::size_t>(samples_per_axis(j));
  }
}

Grid Grid::for_degree(int dim, int level, const DegreeVector& degree, int min_nodes) {
  if (degree.dim() != dim) throw InvalidArgument("degree vector length must equal the dimension");
  std::vector<int> n(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    if (degree[static_cast<std::size_t>(j)] < 0) throw InvalidArgument("degrees must be >= 0");
    n[static_cast<std::size_t>(j)] = std::max(2 * degree[static_cast<std::size_t>(j)] + 2, min_nodes);
  }
  return Grid(dim, level, std::move(n));
}

double Grid::coordinate(int axis, int g) const {
  const int n = nodes_per_cell(axis);
  const int cell = g / n;
  return (cell + rule_.nodes[static_cast<std::size_t>(axis)][static_cast<std::size_t>(g % n)]) * std::ldexp(1.0, -level_);
}

double Grid::weight(int axis, int g) const {
  const int n = nodes_per_cell(axis);
  return rule_.weights[static_cast<std::size_t>(axis)][static_cast<std::size_t>(g % n)] * std::ldexp(1.0, -level_);
}

void Grid::unflatten(std::size_t flat, int* g) const {
  for (int j = 0; j < dim_; ++j) {
    g[j] = static_cast<int>(flat / strides_[static_cast<std::size_t>(j)]);
    flat %= strides_[static_cast<std::size_t>(j)];
  }
}

std::size_t Grid::flatten(const int* g) const {
  std::size_t f = 0;
  for (int j = 0; j < dim_; ++j) f += static_cast<std::size_t>(g[j]) * strides_[static_cast<std::size_t>(j)];
  return f;
}

double Grid::weight(std::size_t flat) const {
  double w = 1.0;
  for (int j = 0; j < dim_; ++j) {
    const auto g = static_cast<int>(flat / strides_[static_cast<std::size_t>(j)]);
    flat %= strides_[static_cast<std::size_t>(j)];
    w *= weight(j, g);
  }
  return w;
}

bool Grid::exact_for_degree(const DegreeVector& degree) const {
  if (degree.dim() != dim_) return false;
  for (int j = 0; j < dim_; ++j)
    if (nodes_per_cell(j) < degree[static_cast<std::size_t>(j)] + 1) return false;
  return true;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw InvalidArgument("sample count does not match grid size");
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(std::span<const double>)>& fn) {
  GridFunction out(grid);
  const int d = grid.dim();
  std::vector<int> g(static_cast<std::size_t>(d));
  std::vector<double> x(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.unflatten(i, g.data());
    for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = grid.coordinate(j, g[static_cast<std::size_t>(j)]);
    out.values_[i] = fn(x);
  }
  return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) { return axpy(1.0, o); }
GridFunction& GridFunction::operator-=(const GridFunction& o) { return axpy(-1.0, o); }

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction& GridFunction::axpy(double s, const GridFunction& o) {
  if (!(o.grid_ == grid_)) throw InvalidArgument("grid functions live on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * o.values_[i];
  return *this;
}

double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("lp_norm requires 1 <= p < inf, got " + std::to_string(p));
  if (p == 2.0) return std::sqrt(weighted_reduce(f, [](double v) { return v * v; }, default_exec()));
  if (p == 1.0) return weighted_reduce(f, [](double v) { return std::abs(v); }, default_exec());
  // scale by the sup to avoid overflow for large p
  const double s = sup_norm(f);
  if (s == 0.0) return 0.0;
  const double sum = weighted_reduce(f, [s, p](double v) { return std::pow(std::abs(v) / s, p); }, default_exec());
  return s * std::pow(sum, 1.0 / p);
}

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw InvalidArgument("grid functions live on different grids");
  GridFunction prod = f;
  auto pv = prod.values();
  auto gv = g.values();
  for (std::size_t i = 0; i < pv.size(); ++i) pv[i] *= gv[i];
  return weighted_reduce(prod, [](double v) { return v; }, default_exec());
}

double integral(const GridFunction& f) { return weighted_reduce(f, [](double v) { return v; }, default_exec()); }

}  // namespace mra
