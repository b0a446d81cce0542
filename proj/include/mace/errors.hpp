#pragma once

#include <stdexcept>
#include <string>

namespace mace {

/// Invalid model or operation parameters (out-of-range H, d, window, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent input data (tick files, series files, curves).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mace
