#pragma once

#include <span>
#include <vector>

#include "mra/dyadic.hpp"
#include "mra/grid.hpp"
#include "mra/index.hpp"

namespace mra {

// A polynomial of per-axis degree <= degree on one dyadic cell, stored in the
// tensor Legendre basis that is orthonormal on that cell.
struct LocalPoly {
  DyadicCube cube;
  DegreeVector degree;
  std::vector<double> coeffs;  // row-major over lambda in Z_+^d(degree)

  // Value at x in the closure of the cell; 0 outside it.
  double eval(std::span<const double> x) const;
};

// Orthogonal L2(Q) projection of f onto polynomials of degree <= l on the
// dyadic cell Q. Reproduces f exactly when f restricted to Q has degree <= l.
// Throws DomainError if Q is outside (0,1)^d, ResolutionError if Q is finer
// than the grid, InvalidArgument if the grid is not exact for degree 2l.
LocalPoly local_project(const GridFunction& f, const DyadicCube& cube, const DegreeVector& l);

}  // namespace mra
