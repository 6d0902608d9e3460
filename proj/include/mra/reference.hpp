#pragma once

// Straightforward serial implementations of operators that the library
// computes with shared cellwise kernels. They use independent code paths and
// exist for cross-checking in tests and as the baseline in benchmarks.

#include <map>
#include <vector>

#include "mra/grid.hpp"
#include "mra/index.hpp"
#include "mra/projectors.hpp"

namespace mra::reference {

// Calls local_project on every cell of level kappa.
PiecewisePoly project_level(const GridFunction& f, const MultiIndex& kappa, const DegreeVector& l);

// Single loop over all nodes with std::pow.
double lp_norm(const GridFunction& f, double p);

// Maximal function at the nodes of f's grid by direct summation: every ball
// average integrates the cellwise means of |f| cell by cell, with 2D cell
// areas from a sub x sub midpoint rule, over radii j * 2^-K / step for
// j = 1 .. 2^K * step * diag, plus the small-radius limit (the mean over the
// node's cell). d <= 2.
GridFunction maximal_function(const GridFunction& f, int step, int sub = 64);

// Classical orthonormal Haar pyramid (pairwise sums and differences over
// sqrt 2) applied along every axis to the level-K cell coefficients of f.
// Blocks are keyed by level with coefficients row-major over the coarse
// cells, like DetailCoeffs for degree 0.
std::map<MultiIndex, std::vector<double>> haar_pyramid(const GridFunction& f);

}  // namespace mra::reference
