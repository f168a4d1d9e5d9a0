#pragma once

#include <stdexcept>
#include <string>

namespace revigis {

// Input violates a type invariant (malformed scene, bad polyline, dangling id).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation called outside its domain (unknown grade, missing neighbor data).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// File could not be read or parsed into a valid value.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two values built over different grade lattices were combined.
class LatticeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace revigis
