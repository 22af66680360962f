#ifndef GNLIE_ERRORS_HPP
#define GNLIE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gnlie {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error with the byte offset of the failure and the set of tokens
/// that would have been accepted there.
struct ParseError : Error {
  std::size_t offset;
  std::string expected;
  ParseError(const std::string& msg, std::size_t off, std::string exp)
      : Error(msg), offset(off), expected(std::move(exp)) {}
};

/// Evaluation failure: unbound symbol or domain violation. `offending` holds
/// the printed subexpression that triggered it.
struct EvalError : Error {
  std::string offending;
  EvalError(const std::string& msg, std::string subexpr)
      : Error(msg), offending(std::move(subexpr)) {}
};

struct DimensionError : Error {
  using Error::Error;
};

struct SceneError : Error {
  using Error::Error;
};

/// A cross-check between two independently computed routes disagreed beyond
/// tolerance. Signals a convention bug, never silently swallowed.
struct ConventionError : Error {
  using Error::Error;
};

}  // namespace gnlie

#endif
