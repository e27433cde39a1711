#include "ergo/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "ergo/errors.hpp"

namespace ergo {

struct Expr::Node {
  enum class Kind { number, var, neg, add, sub, mul, div, pow, call };
  enum class Fn { exp, log, sqrt, abs, max, min, sgn };

  Kind kind = Kind::number;
  double number = 0.0;
  Fn fn = Fn::exp;
  std::vector<Node> kids;
};

namespace {

using Node = Expr::Node;
using Kind = Node::Kind;
using Fn = Node::Fn;

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kE = 2.718281828459045235360287471352662;

struct FnInfo {
  const char* name;
  Fn fn;
  int arity;
};
constexpr FnInfo kFns[] = {
    {"exp", Fn::exp, 1}, {"log", Fn::log, 1}, {"sqrt", Fn::sqrt, 1},
    {"abs", Fn::abs, 1}, {"max", Fn::max, 2}, {"min", Fn::min, 2},
    {"sgn", Fn::sgn, 1},
};

// ---------------------------------------------------------------- parsing

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Node run() {
    Node e = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression syntax error: " + msg, pos_);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Node parse_sum() {
    Node left = parse_term();
    for (;;) {
      if (eat('+')) {
        left = binary(Kind::add, std::move(left), parse_term());
      } else if (eat('-')) {
        left = binary(Kind::sub, std::move(left), parse_term());
      } else {
        return left;
      }
    }
  }

  Node parse_term() {
    Node left = parse_unary();
    for (;;) {
      if (eat('*')) {
        left = binary(Kind::mul, std::move(left), parse_unary());
      } else if (eat('/')) {
        left = binary(Kind::div, std::move(left), parse_unary());
      } else {
        return left;
      }
    }
  }

  // '^' binds tighter than unary minus and associates to the right:
  // -2^2 is -(2^2) and 2^3^2 is 2^(3^2).
  Node parse_unary() {
    if (eat('-')) {
      Node n;
      n.kind = Kind::neg;
      n.kids.push_back(parse_unary());
      return n;
    }
    return parse_power();
  }

  Node parse_power() {
    Node base = parse_primary();
    if (eat('^')) {
      return binary(Kind::pow, std::move(base), parse_unary());
    }
    return base;
  }

  Node parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Node inner = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  Node parse_number() {
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - src_.data());
    Node n;
    n.kind = Kind::number;
    n.number = value;
    return n;
  }

  Node parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") {
      Node n;
      n.kind = Kind::var;
      return n;
    }
    if (name == "pi") return literal(kPi);
    if (name == "e") return literal(kE);
    for (const auto& info : kFns) {
      if (name == info.name) return parse_call(info, start);
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }

  Node parse_call(const FnInfo& info, std::size_t name_pos) {
    if (!eat('(')) fail(std::string("expected '(' after '") + info.name + "'");
    Node n;
    n.kind = Kind::call;
    n.fn = info.fn;
    n.kids.push_back(parse_sum());
    while (eat(',')) n.kids.push_back(parse_sum());
    if (!eat(')')) fail("expected ')' in call argument list");
    if (static_cast<int>(n.kids.size()) != info.arity) {
      pos_ = name_pos;
      fail(std::string("'") + info.name + "' expects " +
           std::to_string(info.arity) + " argument(s), got " +
           std::to_string(n.kids.size()));
    }
    return n;
  }

  static Node literal(double v) {
    Node n;
    n.kind = Kind::number;
    n.number = v;
    return n;
  }

  static Node binary(Kind k, Node l, Node r) {
    Node n;
    n.kind = k;
    n.kids.push_back(std::move(l));
    n.kids.push_back(std::move(r));
    return n;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ------------------------------------------------------------- rendering

void render(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case Kind::var:
      out += 'x';
      return;
    case Kind::neg:
      out += "(-";
      render(n.kids[0], out);
      out += ')';
      return;
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div:
    case Kind::pow: {
      const char op = n.kind == Kind::add   ? '+'
                      : n.kind == Kind::sub ? '-'
                      : n.kind == Kind::mul ? '*'
                      : n.kind == Kind::div ? '/'
                                            : '^';
      out += '(';
      render(n.kids[0], out);
      out += op;
      render(n.kids[1], out);
      out += ')';
      return;
    }
    case Kind::call: {
      for (const auto& info : kFns) {
        if (info.fn == n.fn) {
          out += info.name;
          break;
        }
      }
      out += '(';
      render(n.kids[0], out);
      if (n.kids.size() > 1) {
        out += ',';
        render(n.kids[1], out);
      }
      out += ')';
      return;
    }
  }
}

std::string render(const Node& n) {
  std::string out;
  render(n, out);
  return out;
}

// ------------------------------------------------------------ evaluation

[[noreturn]] void domain_fail(const char* what, const Node& n) {
  throw EvalError(std::string(what) + " in subexpression " + render(n));
}

double eval(const Node& n, double x) {
  switch (n.kind) {
    case Kind::number:
      return n.number;
    case Kind::var:
      return x;
    case Kind::neg:
      return -eval(n.kids[0], x);
    case Kind::add:
      return eval(n.kids[0], x) + eval(n.kids[1], x);
    case Kind::sub:
      return eval(n.kids[0], x) - eval(n.kids[1], x);
    case Kind::mul:
      return eval(n.kids[0], x) * eval(n.kids[1], x);
    case Kind::div: {
      const double num = eval(n.kids[0], x);
      const double den = eval(n.kids[1], x);
      if (den == 0.0) domain_fail("division by zero", n);
      return num / den;
    }
    case Kind::pow: {
      const double base = eval(n.kids[0], x);
      const double expo = eval(n.kids[1], x);
      if (base == 0.0 && expo < 0.0) domain_fail("zero raised to a negative power", n);
      if (base < 0.0 && expo != std::floor(expo))
        domain_fail("negative base with non-integer exponent", n);
      return std::pow(base, expo);
    }
    case Kind::call: {
      const double a = eval(n.kids[0], x);
      switch (n.fn) {
        case Fn::exp:
          return std::exp(a);
        case Fn::log:
          if (a <= 0.0) domain_fail("log of a non-positive argument", n);
          return std::log(a);
        case Fn::sqrt:
          if (a < 0.0) domain_fail("sqrt of a negative argument", n);
          return std::sqrt(a);
        case Fn::abs:
          return std::fabs(a);
        case Fn::sgn:
          return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
        case Fn::max:
          return std::max(a, eval(n.kids[1], x));
        case Fn::min:
          return std::min(a, eval(n.kids[1], x));
      }
      domain_fail("unreachable call kind", n);
    }
  }
  domain_fail("unreachable node kind", n);
}

// ----------------------------------------------------------- kink search

// Inner arguments whose zero crossings create kinks: the child of abs/sgn,
// and left-right of max/min.
void collect_kink_args(const Node& n, std::vector<std::function<double(double)>>& out) {
  if (n.kind == Kind::call) {
    if (n.fn == Fn::abs || n.fn == Fn::sgn) {
      const Node* child = &n.kids[0];
      out.push_back([child](double x) { return eval(*child, x); });
    } else if (n.fn == Fn::max || n.fn == Fn::min) {
      const Node* l = &n.kids[0];
      const Node* r = &n.kids[1];
      out.push_back([l, r](double x) { return eval(*l, x) - eval(*r, x); });
    }
  }
  for (const Node& kid : n.kids) collect_kink_args(kid, out);
}

}  // namespace

Expr Expr::parse(std::string_view source) {
  std::size_t i = 0;
  while (i < source.size() && std::isspace(static_cast<unsigned char>(source[i]))) ++i;
  if (i == source.size()) throw ParseError("expression syntax error: empty source", 0);
  auto node = std::make_shared<Node>(Parser(source).run());
  return Expr(std::move(node));
}

double Expr::evaluate(double x) const { return eval(*root_, x); }

std::string Expr::to_string() const { return render(*root_); }

std::vector<double> Expr::kink_points(double lo, double hi) const {
  if (!(lo < hi)) throw InputError("kink_points: need lo < hi");
  std::vector<std::function<double(double)>> args;
  collect_kink_args(*root_, args);

  constexpr int kScanPoints = 4096;
  constexpr double kKinkTol = 1e-12;
  std::vector<double> found;
  for (const auto& g : args) {
    auto safe = [&](double x) {
      try {
        const double v = g(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
      } catch (const EvalError&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    // Sign-change scan over the last non-zero finite sample: exact zeros on
    // the grid are skipped so a touching argument (x^2 inside abs) is not
    // mistaken for a crossing.
    const double step = (hi - lo) / kScanPoints;
    double last_x = 0.0, last_f = 0.0;
    bool have_sign = false;
    for (int i = 0; i <= kScanPoints; ++i) {
      const double xc = i == kScanPoints ? hi : lo + i * step;
      const double fc = safe(xc);
      if (!std::isfinite(fc)) {
        have_sign = false;
        continue;
      }
      if (fc == 0.0) continue;
      if (have_sign && last_f * fc < 0.0) {
        double a = last_x, b = xc, fa = last_f;
        while (b - a > kKinkTol) {
          const double m = 0.5 * (a + b);
          const double fm = safe(m);
          if (!std::isfinite(fm)) break;
          if (fm == 0.0) {
            a = b = m;
            break;
          }
          if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        found.push_back(0.5 * (a + b));
      }
      last_x = xc;
      last_f = fc;
      have_sign = true;
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<double> out;
  for (double v : found) {
    if (out.empty() || v - out.back() > kKinkTol) out.push_back(v);
  }
  return out;
}

}  // namespace ergo
