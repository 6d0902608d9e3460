#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mra/grid.hpp"
#include "mra/index.hpp"
#include "mra/kernels.hpp"

namespace mra {

// sum_m coeffs[m] * L_m(x) with L_m the orthonormal shifted Legendre basis.
struct LegendreSeries {
  std::vector<double> coeffs;
  double eval(double x) const;
};

// Orthonormal shifted Legendre polynomials of degrees 0..l on (0,1).
std::vector<LegendreSeries> scaling_basis_1d(int l);

// A piecewise polynomial on the two halves of (0,1):
//   x in (0,1/2): sum_m left[m]  * sqrt(2) L_m(2x)
//   x in (1/2,1): sum_m right[m] * sqrt(2) L_m(2x - 1)
// The half-cell functions sqrt(2) L_m(2x - h) are orthonormal in L2(0,1), so
// the concatenated coefficient vector is an isometric coordinate system.
struct HalfCellPoly {
  std::vector<double> left;
  std::vector<double> right;
  double eval(double x) const;
  std::vector<double> coordinates() const;
};

// Orthonormal basis of the complement of degree-l polynomials on (0,1)
// inside degree-l piecewise polynomials on the two halves.
struct WaveletBasis1D {
  int degree = 0;
  std::vector<HalfCellPoly> functions;  // l + 1 entries
};

// Built by projecting the half-cell coordinate axes onto the complement and
// orthonormalizing them in order with two-pass Gram-Schmidt. Sign convention:
// the last coordinate with magnitude above 1e-12 is positive. For l = 0 this
// is the Haar function -1 on (0,1/2), +1 on (1/2,1).
WaveletBasis1D wavelet_basis_1d(int l);

// Tensor products over axes: wavelet factor on axes in J, Legendre factor on
// the others. J = 0 gives the root scaling basis of polynomials on (0,1)^d.
class DetailBasis {
 public:
  DetailBasis(unsigned directions, DegreeVector degree);

  unsigned directions() const { return directions_; }
  const DegreeVector& degree() const { return degree_; }
  int dim() const { return degree_.dim(); }
  // prod_j (l_j + 1), the same for every J.
  int size() const { return poly_dim(degree_); }
  // Function i (row-major over per-axis factor indices) at x in [0,1]^d;
  // zero outside the closed unit cube.
  double eval(int i, std::span<const double> x) const;
  // Per-axis factor index of function i.
  std::vector<int> factor_index(int i) const;
  double eval_factor(int axis, int index, double x) const;

 private:
  unsigned directions_;
  DegreeVector degree_;
  std::vector<WaveletBasis1D> wavelets_;
};

DetailBasis detail_basis(unsigned directions, const DegreeVector& l);

// Dimension of the detail space at kappa:
//   prod_j (l_j + 1) * 2^{(kappa - chi_J, e)},  J = supp(kappa).
std::uint64_t detail_dim(const MultiIndex& kappa, const DegreeVector& l);
// Same value in floating point, for counts beyond 64 bits.
double detail_dim_real(const MultiIndex& kappa, const DegreeVector& l);

// Orthonormal Legendre basis of the dyadic cells of one level, sampled on a
// grid axis: table value (g, m) = 2^{k/2} L_m(2^k x_g - cell(g)).
AxisTable legendre_table(const Grid& grid, int axis, int level, int degree);

// One-dimensional factor of the detail basis at level kappa_j, sampled on a
// grid axis. kappa_j = 0 gives the Legendre table on (0,1); kappa_j >= 1
// gives 2^{(kappa_j-1)/2} psi_i(2^{kappa_j-1} x - rho) on cells of level
// kappa_j - 1.
AxisTable detail_table(const Grid& grid, int axis, int kappa_j, const WaveletBasis1D& wavelets);

}  // namespace mra
