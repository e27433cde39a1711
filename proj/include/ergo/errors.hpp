#pragma once

#include <stdexcept>
#include <string>

namespace ergo {

/// Bad user input: malformed expression or config, invalid parameter values.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression parse failure; `position` is the byte offset into the source.
struct ParseError : InputError {
  ParseError(const std::string& msg, std::size_t pos)
      : InputError(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

/// Evaluation left the domain of a subexpression (log/sqrt of a negative,
/// division by zero). The message names the offending subexpression.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature could not meet the requested tolerance within its panel budget.
struct QuadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A bracketing search failed: no sign change, invalid bracket, or the
/// geometric expansion budget was exhausted.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Existence of an optimal boundary could not be established numerically
/// (weakened-limit regime; the message names the failing assumption).
struct ExistenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A semi-infinite integral's tail failed to decay, indicating a likely
/// (D1)/(U1)-type condition violation.
struct TailError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ergo
