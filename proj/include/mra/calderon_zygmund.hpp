#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mra/dyadic.hpp"
#include "mra/grid.hpp"
#include "mra/kernels.hpp"

namespace mra {

// Finest-level cells of a padded box around (0,1)^d: cell indices run over
// [-pad, 2^K + pad) on every axis, in units of 2^-K. Row-major, axis 0
// slowest. Every cell outside the box counts as a member when the set is
// closed and as a non-member when it is open.
struct CellSet {
  int dim = 1;
  int level = 0;
  int pad = 0;
  bool closed = true;
  std::vector<std::uint8_t> members;

  int extent() const { return (1 << level) + 2 * pad; }
  std::size_t cell_count() const { return members.size(); }
  // Cell index per axis (may be negative) of a flat position and back.
  void cell_of(std::size_t flat, std::int64_t* c) const;
  std::size_t flat_of(const std::int64_t* c) const;
  bool contains(const std::int64_t* c) const;
  // Lebesgue measure of the members inside the box.
  double measure() const;
  CellSet complement() const;
};

// Hardy-Littlewood maximal function of |f| (f extended by zero outside
// (0,1)^d) over centered Euclidean balls, evaluated at the node positions of
// the padded box. Ball averages are taken of the cellwise means of |f|, so
// they are exact integrals of a piecewise constant function:
//  d = 1: the supremum over all radii is exact (it is attained at distances
//         to cell boundaries);
//  d = 2: radii run over the ladder j * 2^-K / 2, so the value is a lower
//         estimate of the supremum.
// The value at a node is the larger of that supremum and |f(node)|.
// Throws Unsupported for d > 2.
struct MaximalField {
  Grid grid;          // grid of f
  int pad = 0;        // padding in finest cells
  bool truncated = false;  // padding was capped below the width that
                           // guarantees M <= alpha outside the box
  // values[cell * nodes_per_cell + local node] over the padded box cells
  std::vector<double> values;
};

MaximalField maximal_field(const GridFunction& f, int pad, Exec exec = default_exec());
// Maximal function restricted to the nodes of f's grid.
GridFunction maximal_function(const GridFunction& f, Exec exec = default_exec());

// Cellwise means of |f| over the finest cells, row-major.
std::vector<double> cell_means_abs(const GridFunction& f);

// Exact area of the intersection of the disc of radius r centred at the
// origin with the rectangle [x0,x1] x [y0,y1].
double disc_rect_area(double x0, double x1, double y0, double y1, double r);

// Padding (in finest cells) beyond which M_f <= alpha is guaranteed by the
// decay bound M_f(x) <= ‖f‖_1 / mes B(x, dist(x, (0,1)^d)).
int exterior_padding(const GridFunction& f, double alpha);

// F = {M_f <= alpha}: cells of the padded box all of whose nodes satisfy
// M_f <= alpha; cells beyond the padding belong to F.
CellSet level_set(const GridFunction& f, double alpha, bool* truncated = nullptr);

struct WhitneyCube {
  DyadicCube cube;       // equal level on all axes
  std::int64_t dist2 = 0;  // squared distance to F in units of 2^-2K
};

struct WhitneyDecomposition {
  int dim = 1;
  int level = 0;       // resolution K
  int base_level = 0;  // k_0
  bool base_clamped = false;  // a level-0 cube already qualified
  std::vector<WhitneyCube> cubes;  // in acceptance order
  double residual_measure = 0;     // part of W left uncovered at level K
  int boundary_cells = 0;          // cells of W touching F
};

// Greedy dyadic Whitney decomposition of W = complement of F:
// k_0 is the least level having a cube whose distance to F exceeds
// sqrt(d) 2^-k; then level by level from k_0 to K every cube with
// dist(Q, F) > sqrt(d) 2^-k disjoint from the cubes accepted so far is
// accepted. All distances are exact integers in units of 2^-K. Levels are not
// taken below 0; base_clamped records when that bound was active.
// Throws InvalidArgument if F is not closed or has no cell in the box.
WhitneyDecomposition whitney(const CellSet& F);

// Diameter and distance in units of 1, for reporting.
double cube_diameter(const WhitneyCube& q, int dim);
double cube_distance(const WhitneyCube& q, int K);

struct BadBlock {
  DyadicCube cube;
  double average = 0;               // (1/mes Q) int_Q f
  std::vector<std::size_t> nodes;   // flat grid indices of the nodes in Q
  std::vector<double> values;       // h_r at those nodes: f - average
  double integral(const Grid& grid) const;
};

struct CZSplit {
  GridFunction good;
  std::vector<BadBlock> bad;
  GridFunction reassemble() const;  // good + sum of bad blocks
};

struct CZResult {
  CellSet closed_set;
  WhitneyDecomposition whitney;
  CZSplit split;
  bool padding_truncated = false;
};

// Calderon-Zygmund split at height alpha > 0: F = {M_f <= alpha}, Whitney
// cubes of W, g = f on F and on the uncovered residual, g = cube average on
// each Whitney cube inside (0,1)^d, h_r = (f - average) on Q_r.
CZResult cz_split(const GridFunction& f, double alpha);

// One cube per line: "level position_0 ... position_{d-1}".
void write_cubes(std::ostream& os, const WhitneyDecomposition& w);

}  // namespace mra
