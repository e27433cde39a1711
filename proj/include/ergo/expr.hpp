#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ergo {

/// A parsed arithmetic expression in one variable `x`.
///
/// Grammar: numeric literals, `x`, the constants `pi` and `e`, binary
/// `+ - * / ^` (usual precedence, `^` right-associative and binding tighter
/// than unary minus), unary minus, and the calls exp, log, sqrt, abs, max,
/// min, sgn. Deliberately minimal: every drift/volatility/cost function used
/// by the models here is expressible with this set.
///
/// Instances are immutable after construction; evaluate() is reentrant and
/// safe to call from many threads at once.
class Expr {
 public:
  /// Parses source text. Throws ParseError (with position) on syntax errors,
  /// unknown identifiers, or arity mismatches.
  static Expr parse(std::string_view source);

  /// Evaluates at x. log/sqrt of a negative argument, division by zero and
  /// invalid powers throw EvalError naming the offending subexpression;
  /// sgn(0) is 0.
  double evaluate(double x) const;

  /// Canonical fully-parenthesised rendering; parse(to_string()) evaluates
  /// identically to this expression at every point.
  std::string to_string() const;

  /// x-values in [lo, hi] where an abs/max/min/sgn argument crosses zero:
  /// a 4096-point sign-change scan per inner argument, each change refined by
  /// bisection to 1e-12, merged, sorted and deduplicated within 1e-12.
  /// Smooth expressions yield an empty list.
  std::vector<double> kink_points(double lo, double hi) const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace ergo
