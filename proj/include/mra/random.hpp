#pragma once

#include <cstdint>
#include <random>

#include "mra/grid.hpp"
#include "mra/index.hpp"
#include "mra/projectors.hpp"

namespace mra {

using Rng = std::mt19937_64;

// Generator for trial number `trial` of a run seeded with `seed`; every trial
// owns its own stream so results do not depend on execution order.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

// Standard normal coefficients in every cell block of level `level`.
PiecewisePoly random_piecewise_poly(const MultiIndex& level, const DegreeVector& l, Rng& rng);

// Independent standard normal value at every grid node.
GridFunction random_nodal(const Grid& grid, Rng& rng);

// sum over kappa <= k of 2^{-decay |kappa|_1} times a detail block with
// standard normal coefficients.
GridFunction random_multiscale(const Grid& grid, const MultiIndex& k, const DegreeVector& l, double decay, Rng& rng);

// A few detail basis functions with random levels <= k, random cells and
// normal amplitudes.
GridFunction random_sparse(const Grid& grid, const MultiIndex& k, const DegreeVector& l, int terms, Rng& rng);

// Random product of 1D step functions: on each axis, the indicator of a
// random interval with level-k endpoints.
GridFunction random_steps(const Grid& grid, const MultiIndex& k, Rng& rng);

}  // namespace mra
