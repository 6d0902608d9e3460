#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mra/index.hpp"
#include "mra/kernels.hpp"

namespace mra {

// Largest error seen over all cases of one invariant, relative to the norm
// of the inputs.
struct CheckResult {
  std::string name;
  double value = 0;
  double tolerance = 0;
  int cases = 0;
  bool pass() const { return value <= tolerance; }
};

struct ProjectorCheckConfig {
  DegreeVector degree{0};
  int level = 4;  // grid level K
  int trials = 4;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
};

// |‖f‖^2 - sum of squared coefficients| / ‖f‖^2 for random piecewise
// polynomials of level K e.
CheckResult check_parseval(const ProjectorCheckConfig& cfg, Exec exec = default_exec());

// idempotency, annihilation, self-adjointness and cross-orthogonality of the
// detail projectors over kappa, kappa' <= min(K, 2) e.
std::vector<CheckResult> check_projector_algebra(const ProjectorCheckConfig& cfg, Exec exec = default_exec());

// Inclusion-exclusion, basis coefficients and the product of 1D detail
// operators give the same projection for every kappa <= min(K, 3) e.
CheckResult check_detail_routes(const ProjectorCheckConfig& cfg, Exec exec = default_exec());

// sum over kappa <= k of the detail projections equals the level projection
// for every k <= min(K, 3) e.
CheckResult check_telescoping(const ProjectorCheckConfig& cfg, Exec exec = default_exec());

// Degree 0 only: analyze against the classical Haar pyramid.
CheckResult check_haar_oracle(const ProjectorCheckConfig& cfg, Exec exec = default_exec());

// All of the above; the Haar oracle only when the degree is 0.
std::vector<CheckResult> verify_projectors(const ProjectorCheckConfig& cfg, Exec exec = default_exec());

}  // namespace mra
