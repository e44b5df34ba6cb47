#pragma once

#include <stdexcept>
#include <string>

namespace wedge {

// Bad caller input: out-of-range parameters, mismatched widths or lengths.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematically undefined operation, e.g. inverting zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation would exceed its configured time or memory budget.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. Never expected to fire.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wedge
