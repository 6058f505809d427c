#pragma once

#include <stdexcept>
#include <string>

namespace dirode {

// Bad arguments or configuration, detected before any numerics run.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Singular systems, non-finite values, failed quadrature and similar.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dirode
