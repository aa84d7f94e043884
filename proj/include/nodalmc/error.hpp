#pragma once

#include <stdexcept>
#include <string>

namespace nodalmc {

// Argument outside the mathematical domain of an operation (negative radius,
// |m| > l, unsupported Bessel order, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical or statistical validation failed (reality residue, resolution
// check, empty frequency window, mismatched experiment specs).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nodalmc
