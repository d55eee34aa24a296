#pragma once

#include <stdexcept>
#include <string>

namespace qdisc {

// Thrown for d < 3 and for any size mismatch between a basis and its operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input: non-Hermitian, non-unitary, bad probability vector, etc.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A constructor would produce a matrix that is not a density matrix.
class UnphysicalState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qdisc
