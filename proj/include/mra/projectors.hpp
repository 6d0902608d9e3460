#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "mra/dyadic.hpp"
#include "mra/grid.hpp"
#include "mra/index.hpp"
#include "mra/kernels.hpp"

namespace mra {

// Element of the space of piecewise polynomials of degree <= l on the cells of
// level kappa: one block of prod(l_j + 1) orthonormal tensor-Legendre
// coefficients per cell. Cells are row-major over nu.
struct PiecewisePoly {
  MultiIndex level;
  DegreeVector degree;
  std::vector<double> coeffs;

  std::size_t cell_count() const;
  std::size_t block_size() const { return static_cast<std::size_t>(poly_dim(degree)); }
  std::span<const double> cell(std::size_t flat) const {
    return std::span<const double>(coeffs).subspan(flat * block_size(), block_size());
  }
  // Value at x in (0,1)^d. Points on a cell boundary use the upper cell.
  double eval(std::span<const double> x) const;
};

// Level projector: cellwise orthogonal projection onto degree-l polynomials
// on every cell of level kappa. Throws ResolutionError if kappa is finer than
// the grid.
PiecewisePoly project_level(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l,
                            Exec exec = default_exec());

// Samples a piecewise polynomial on a grid at least as fine as its level.
GridFunction to_grid(const PiecewisePoly& p, const Grid& grid, Exec exec = default_exec());

// Detail projector by inclusion-exclusion over the level projectors:
//   sum over eps in {0,1}^d with supp(eps) in supp(kappa) of
//   (-1)^{|eps|} E_{kappa - eps} f.
GridFunction project_detail(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l,
                            Exec exec = default_exec());

// Coefficients of the detail projection at kappa in the orthonormal detail
// basis. Coarse cells rho are row-major with 2^{kappa_j - 1} cells on axes
// with kappa_j > 0 and one cell otherwise; functions i are row-major over the
// per-axis factor indices. coeffs[rho * functions + i].
struct DetailCoeffs {
  MultiIndex kappa;
  DegreeVector degree;
  std::vector<double> coeffs;

  int cells(int axis) const;
  std::size_t cell_count() const;
  std::size_t functions() const { return static_cast<std::size_t>(poly_dim(degree)); }
  double at(std::size_t rho, std::size_t i) const { return coeffs[rho * functions() + i]; }
};

DetailCoeffs analyze_block(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l,
                           Exec exec = default_exec());
// Basis expansion of one block on a grid.
GridFunction synthesize_block(const DetailCoeffs& block, const Grid& grid, Exec exec = default_exec());

// Finite index set of levels: a box {kappa <= k} or a hyperbolic cross
// {(kappa, beta) <= r}.
class IndexSet {
 public:
  struct Box {
    MultiIndex k;
  };
  struct Cross {
    std::vector<double> beta;
    int radius = 0;
  };

  static IndexSet box(MultiIndex k);
  static IndexSet cross(std::vector<double> beta, int radius);

  int dim() const;
  std::vector<MultiIndex> members() const;
  bool contains(const MultiIndex& kappa) const;
  // Componentwise maximum over the members.
  MultiIndex bounding_box() const;
  const std::variant<Box, Cross>& shape() const { return shape_; }
  std::string str() const;

 private:
  explicit IndexSet(std::variant<Box, Cross> s) : shape_(std::move(s)) {}
  std::variant<Box, Cross> shape_;
};

// Blocks of detail coefficients over an index set, together with the grid
// they were computed on.
struct Decomposition {
  Grid grid;
  DegreeVector degree;
  IndexSet index_set = IndexSet::box(MultiIndex{0});
  std::map<MultiIndex, DetailCoeffs> blocks;
};

Decomposition analyze(const GridFunction& f, const IndexSet& index_set, const DegreeVector& l, Exec exec = default_exec());
GridFunction synthesize(const Decomposition& dec, Exec exec = default_exec());
// Detail projections of every block, each sampled on the decomposition grid.
std::map<MultiIndex, GridFunction> detail_functions(const Decomposition& dec, Exec exec = default_exec());

// |‖E_k f‖^2 - sum_{kappa <= k} ‖coefficients of kappa‖^2|: the level
// projection norm against the Parseval sum of the basis coefficients.
double parseval_gap(const GridFunction& f, const MultiIndex& k, const DegreeVector& l, Exec exec = default_exec());

// Applies a 1D linear operator along axis (0-based) for every fixed choice of
// the other coordinates.
GridFunction apply_axis(const LineOperator& op, int axis, const GridFunction& f, Exec exec = default_exec());

// The 1D level and detail projectors on one grid axis, written as line
// operators. These use their own cellwise quadrature loop and do not share
// code with project_level, so they serve as an independent route.
LineOperator level_operator_1d(const Grid& grid, int axis, int level, int degree);
LineOperator detail_operator_1d(const Grid& grid, int axis, int level, int degree);

// Detail projector as the product of 1D detail projectors along every axis.
GridFunction project_detail_axiswise(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l,
                                     Exec exec = default_exec());

// Textual record stream. The header carries the grid, degree and index set;
// each following line is one coefficient "kappa;rho;i;value" with the value
// written as a hexadecimal float, so a round trip is exact.
void write_decomposition(std::ostream& os, const Decomposition& dec);
Decomposition read_decomposition(std::istream& is);

}  // namespace mra
