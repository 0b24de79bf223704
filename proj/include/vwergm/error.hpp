#pragma once

#include <stdexcept>
#include <string>

namespace vwergm {

/// Raised when an argument violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a hard size guard (enumeration, net storage).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for inputs outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input file; the message carries file:line context.
class ParseError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

}  // namespace vwergm
