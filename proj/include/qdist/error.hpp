#ifndef QDIST_ERROR_HPP
#define QDIST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qdist {

// Bad construction parameters: non-prime p, degenerate form, malformed spec strings.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of an operation (eta(0), r = 0, zero coefficient).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero in F_q") {}
};

// A computation would exceed the configured character-evaluation budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact identity that must hold by construction did not (non-exact division, overflow).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qdist

#endif  // QDIST_ERROR_HPP
