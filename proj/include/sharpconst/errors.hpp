#pragma once

#include <stdexcept>
#include <string>

namespace sharpconst {

/// Malformed arguments: dimension mismatch, out-of-range index, bad scale.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument lies outside the domain where the operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unsupported dimension, unparsable body spec, bad run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function produced a non-finite value at a quadrature node.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The discretization cannot separate the basis (singular Gram / LP rank loss).
class DegenerateRuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sharpconst
