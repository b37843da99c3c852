// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace corrdetect {

/// Precondition violated by the caller (bad node id, unsatisfiable parameters, ...).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed graph or scenario text.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// File could not be opened, read, or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input too large for an exhaustive (exact / oracle) routine.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace corrdetect
