#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stochsat {

// Malformed problem text. Carries a 1-based source position when known.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line == 0 ? msg
                                     : std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Invalid hyper-parameters or solver configuration.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A point with the wrong number of coordinates for the problem.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A point that lies outside the parameter domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Bisection requested along a dimension that cannot be split.
class DegenerateSplit : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

} // namespace stochsat
