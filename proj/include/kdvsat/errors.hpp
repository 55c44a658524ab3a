#pragma once

#include <stdexcept>

namespace kdvsat {

// Invalid configuration, arguments or file contents. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Runtime numerical failure: blow-up, non-finite state, singular factorization,
// non-contracting fixed-point iteration. CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace kdvsat
