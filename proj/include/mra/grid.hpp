#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mra/index.hpp"
#include "mra/quadrature.hpp"

namespace mra {

// Tensor Gauss sampling lattice of the finest dyadic level K on (0,1)^d.
// Every finest cell 2^-K (nu + (0,1)^d) carries nodes_per_cell(j) Gauss nodes
// along axis j. Samples are stored row-major with axis 0 slowest.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, int level, std::vector<int> nodes_per_cell);

  // Nodes per axis = max(2 l_j + 2, min_nodes): exact degree-2l inner
  // products with headroom for non-polynomial inputs.
  static Grid for_degree(int dim, int level, const DegreeVector& degree, int min_nodes = 0);

  int dim() const { return dim_; }
  int level() const { return level_; }
  int nodes_per_cell(int axis) const { return nodes_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& nodes_per_cell() const { return nodes_; }
  int cells_per_axis() const { return 1 << level_; }
  int samples_per_axis(int axis) const { return cells_per_axis() * nodes_per_cell(axis); }
  std::size_t size() const { return size_; }
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }
  const QuadratureRule& rule() const { return rule_; }

  // Position in (0,1) of the g-th sample along an axis.
  double coordinate(int axis, int g) const;
  // Quadrature weight of that sample, including the 2^-K cell width.
  double weight(int axis, int g) const;
  // Product weight of a flat sample index.
  double weight(std::size_t flat) const;

  void unflatten(std::size_t flat, int* g) const;
  std::size_t flatten(const int* g) const;

  // Largest per-axis degree whose squared products are integrated exactly.
  bool exact_for_degree(const DegreeVector& degree) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.level_ == b.level_ && a.nodes_ == b.nodes_;
  }

 private:
  int dim_ = 0;
  int level_ = 0;
  std::vector<int> nodes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
  QuadratureRule rule_;
};

// Samples of a function on a Grid; the universal numeric representation of
// an element of L_p((0,1)^d).
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}
  GridFunction(Grid grid, std::vector<double> values);

  // Evaluates fn at every node; fn receives the d coordinates.
  static GridFunction sample(const Grid& grid, const std::function<double(std::span<const double>)>& fn);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double s);
  // this += s * o
  GridFunction& axpy(double s, const GridFunction& o);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Quadrature approximation of the L_p((0,1)^d) norm, 1 <= p < inf.
/// Exact for p = 2 when f is piecewise polynomial of degree <= nodes-1 on
/// the finest cells. Throws InvalidArgument for p < 1 or non-finite p.
double lp_norm(const GridFunction& f, double p);

// Largest absolute nodal value. A diagnostic only, not an L_inf norm.
double sup_norm(const GridFunction& f);

// Quadrature inner product over (0,1)^d.
double inner_product(const GridFunction& f, const GridFunction& g);

// Quadrature integral over (0,1)^d.
double integral(const GridFunction& f);

}  // namespace mra
