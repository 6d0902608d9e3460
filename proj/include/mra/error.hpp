#pragma once

#include <stdexcept>
#include <string>

namespace mra {

// Precondition violated by a caller-supplied argument.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Geometry outside the region a grid function is defined on.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A dyadic level finer than the sampling grid can resolve.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point sits exactly on a dyadic breakpoint where a sign is undefined.
struct BoundaryError : std::domain_error {
  using std::domain_error::domain_error;
};

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Unsupported : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace mra
