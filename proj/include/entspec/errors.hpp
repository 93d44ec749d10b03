#pragma once

#include <stdexcept>
#include <string>

namespace entspec {

// Each class maps onto one CLI exit code (1, 2, 3).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace entspec
