#pragma once

#include <stdexcept>
#include <string>

namespace crlcc {

/// Invalid argument or inconsistent parameter set.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// calibrate_degree found no admissible degree.
class CalibrationError : public std::runtime_error {
 public:
  explicit CalibrationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or unsupported file.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// An attack produced a mask over its budget, or a request exceeds the
/// budget a code is meant to tolerate.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crlcc
