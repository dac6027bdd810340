#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mppdg {

/// Bad user input: meshes, degrees, parameters, config keys.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem lookup failed.
class NotFound : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Operation not available for this problem (e.g. no exact solution).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Problem description cannot drive a time step (no wave speed, no diffusion).
class InvalidProblem : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Periodic Poisson solve requested for data with nonzero mean.
class SolvabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// NaN or Inf produced while assembling or stepping.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, std::ptrdiff_t index)
      : std::runtime_error(what),
        index_(index) {}
  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

/// The first-order scheme left the bounds: Gamma^M < 0 or Gamma^m > 0 in some cell.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(const std::string& what, std::size_t cell)
      : std::runtime_error(what + " (cell " + std::to_string(cell) + ")"), cell_(cell) {}
  std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t cell_;
};

}  // namespace mppdg
