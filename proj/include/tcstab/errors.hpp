#pragma once

#include <stdexcept>
#include <string>

namespace tcstab {

// Parameter outside the domain where a formula is defined (e.g. nu <= 0).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tcstab
