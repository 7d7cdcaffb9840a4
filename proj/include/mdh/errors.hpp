#pragma once

#include <stdexcept>
#include <string>

namespace mdh {

/// Arithmetic outside the domain of an operation (e.g. inverting zero).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A query or operand falls outside a truncation window.
class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Two operands live on different phase frames.
class FrameMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An intersection-number provider has no entry for a requested key.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A q-element is not the image of any (singular) differential polynomial.
class NotInImageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A table entry violates a load-time invariant.
class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent routes disagree, or a value that must be real is not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mdh
