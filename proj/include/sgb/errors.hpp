#pragma once

#include <stdexcept>
#include <string>

namespace sgb {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The displacement matrix of a sample set is singular (or numerically so).
struct UnpoisedSet : Error {
  UnpoisedSet(double sigma_min_in, double sigma_max_in)
      : Error("sample set is not poised for linear interpolation (sigma_min=" +
              std::to_string(sigma_min_in) + ", sigma_max=" + std::to_string(sigma_max_in) + ")"),
        sigma_min(sigma_min_in),
        sigma_max(sigma_max_in) {}
  explicit UnpoisedSet(const std::string& what) : Error(what), sigma_min(0), sigma_max(0) {}
  double sigma_min;
  double sigma_max;
};

/// Directions spanning a hyperplane are linearly dependent.
struct DegenerateDirections : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Enumeration-based routine called beyond its supported dimension.
struct DimensionTooLarge : Error {
  using Error::Error;
};

struct NonpositiveStep : Error {
  using Error::Error;
};

struct DegenerateRange : Error {
  using Error::Error;
};

struct AsymmetricHessian : Error {
  using Error::Error;
};

struct ZeroLipschitz : Error {
  using Error::Error;
};

/// Candidate point lies on (or numerically too close to) the anchor hyperplane,
/// where the gradient-error bound blows up. Carries the saturating value that
/// solvers may use in place of infinity.
struct DegenerateCandidate : Error {
  explicit DegenerateCandidate(const std::string& what, double saturated_in)
      : Error(what), saturated(saturated_in) {}
  double saturated;
};

/// Both half-space subproblems were infeasible, even after budget relaxation.
struct BothSidesInfeasible : Error {
  using Error::Error;
};

/// Malformed input file (sample set or run configuration).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace sgb
