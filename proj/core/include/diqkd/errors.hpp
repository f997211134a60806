#pragma once

#include <stdexcept>
#include <string>

namespace diqkd {

/// Argument outside the mathematical domain of a bound or model.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Statistics that no quantum strategy can produce (a1^2 + S^2/4 > 2).
class BoundaryViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An internal numerical routine failed to produce a consistent answer.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bracketing search could not find a sign change.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diqkd
