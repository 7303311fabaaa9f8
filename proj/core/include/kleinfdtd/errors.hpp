#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kleinfdtd {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GridErrorKind : std::uint8_t {
  bad_dims,
  nonpositive_spacing,
  too_few_cells,
  memory_budget_exceeded,
  index_out_of_bounds,
};

class GridError : public Error {
 public:
  GridError(GridErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  GridErrorKind kind() const noexcept { return kind_; }

 private:
  GridErrorKind kind_;
};

/// Physically or numerically invalid input to an operation (unresolvable
/// packet, potential edge outside the grid, dt above the stability bound...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf appeared in the spinor field during time stepping.
class DivergenceError : public Error {
 public:
  DivergenceError(std::int64_t step, const std::string& what) : Error(what), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

/// Configuration text could not be parsed or failed validation.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kleinfdtd
