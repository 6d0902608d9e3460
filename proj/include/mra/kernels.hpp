#pragma once

// Cellwise data-parallel kernels shared by the projection, analysis and
// synthesis operators. Every kernel takes an Exec policy: Exec::parallel
// distributes independent cells over OpenMP threads, Exec::serial runs the
// same loop on one thread. Work inside one cell or one reduction chunk is
// always sequential in a fixed order, so both policies return bit-identical
// results.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mra/grid.hpp"

namespace mra {

enum class Exec { serial, parallel };

// Default policy used by the public operators.
Exec default_exec();
void set_default_exec(Exec e);

// Per-axis table of basis-function values at every sample of a grid axis.
// Sample g belongs to cell g / samples_per_cell; values are stored as
// values[g * functions + i].
struct AxisTable {
  int cells = 1;
  int functions = 1;
  int samples_per_cell = 1;
  std::vector<double> values;

  double at(int g, int i) const {
    return values[static_cast<std::size_t>(g) * static_cast<std::size_t>(functions) + static_cast<std::size_t>(i)];
  }
};

// Partition of a grid into product cells given by one AxisTable per axis.
class CellLayout {
 public:
  CellLayout(const Grid& grid, const std::vector<AxisTable>& tables);

  std::size_t cell_count() const { return cell_count_; }
  std::size_t function_count() const { return function_count_; }
  std::size_t nodes_per_cell() const { return local_offsets_.size(); }

  // Flat sample index of the first node of a cell.
  std::size_t cell_base(std::size_t cell, int* cell_multi) const;
  const std::vector<std::size_t>& local_offsets() const { return local_offsets_; }
  // local_multi()[t * d + j]: per-axis node offset of local node t.
  const std::vector<int>& local_multi() const { return local_multi_; }
  const std::vector<int>& cells() const { return cells_; }
  const std::vector<int>& functions() const { return functions_; }

 private:
  const Grid* grid_;
  std::vector<int> cells_;
  std::vector<int> functions_;
  std::vector<int> samples_per_cell_;
  std::size_t cell_count_ = 1;
  std::size_t function_count_ = 1;
  std::vector<std::size_t> local_offsets_;
  std::vector<int> local_multi_;
};

// coeffs[cell * F + i] = sum over nodes x of the cell of
//   weight(x) * f(x) * prod_j table_j(x_j, i_j)
// with i the row-major flattening of (i_0, ..., i_{d-1}).
std::vector<double> cell_inner_products(const GridFunction& f, const std::vector<AxisTable>& tables, Exec exec);

// Inverse of cell_inner_products for orthonormal tables: writes (or adds)
//   sum_i coeffs[cell * F + i] * prod_j table_j(x_j, i_j)
// at every node.
void cell_expand(std::span<const double> coeffs, const std::vector<AxisTable>& tables, GridFunction& out, bool accumulate,
                 Exec exec);

// sum_i weight_i * phi(values_i) with a fixed chunking so the result does not
// depend on the thread count.
double weighted_reduce(const GridFunction& f, const std::function<double(double)>& phi, Exec exec);

// Applies op to every 1D line of samples along an axis.
using LineOperator = std::function<void(std::span<const double> in, std::span<double> out)>;
GridFunction apply_lines(const LineOperator& op, int axis, const GridFunction& f, Exec exec);

}  // namespace mra
