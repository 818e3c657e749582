#pragma once

#include <stdexcept>

namespace qstencil {

// Requested construction exists mathematically but is not provided
// (e.g. stencils with excess).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition on the inputs does not hold
// (e.g. no sign change on a bisection bracket).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qstencil
