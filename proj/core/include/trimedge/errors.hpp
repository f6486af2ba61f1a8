#pragma once

#include <stdexcept>
#include <string>

namespace trimedge {

// Bad arguments or configuration: unknown family, alpha >= beta, empty trim
// range, malformed input files.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The distribution violates the smoothness hypotheses at a trimming quantile
// (no density, zero density), so population functionals are unavailable.
class ModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sample-side degeneracy: zero Winsorized variance, zero density estimate.
class DegenerateData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or root-finding failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trimedge
