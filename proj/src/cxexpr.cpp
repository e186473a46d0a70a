#include "qcext/cxexpr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qcext::cx {

namespace {

NodePtr make_node(Op op, complex value = {}, NodePtr lhs = nullptr,
                  NodePtr rhs = nullptr) {
  return std::make_shared<const Node>(
      Node{op, value, std::move(lhs), std::move(rhs)});
}

bool is_literal(const Expr& e, complex v) {
  return e.is_constant() && e.constant_value() == v;
}

// Arguments on the negative real axis take arg = +pi regardless of the sign
// of a zero imaginary part.
complex on_principal_side(complex w) {
  if (w.imag() == 0.0) return {w.real(), 0.0};
  return w;
}

bool integral_exponent(complex w, long long& n) {
  if (w.imag() != 0.0) return false;
  const double r = w.real();
  if (!std::isfinite(r) || std::trunc(r) != r || std::abs(r) > 1e9) return false;
  n = static_cast<long long>(r);
  return true;
}

complex eval_pow(complex base, complex exponent, complex at) {
  long long n = 0;
  if (integral_exponent(exponent, n)) {
    if (n < 0 && base == complex{}) {
      throw PointError(PointError::Kind::pole, at, "negative power of zero");
    }
    return ipow(base, n);
  }
  if (base == complex{}) {
    if (exponent.real() > 0.0) return {};
    throw PointError(PointError::Kind::branch_point, at,
                     "non-integer power of zero");
  }
  return std::exp(exponent * std::log(on_principal_side(base)));
}

complex eval_node(const Node& n, complex z) {
  switch (n.op) {
    case Op::literal:
      return n.value;
    case Op::var:
      return z;
    case Op::conj:
      return std::conj(eval_node(*n.lhs, z));
    case Op::neg:
      return -eval_node(*n.lhs, z);
    case Op::add:
      return eval_node(*n.lhs, z) + eval_node(*n.rhs, z);
    case Op::sub:
      return eval_node(*n.lhs, z) - eval_node(*n.rhs, z);
    case Op::mul:
      return eval_node(*n.lhs, z) * eval_node(*n.rhs, z);
    case Op::div: {
      const complex num = eval_node(*n.lhs, z);
      const complex den = eval_node(*n.rhs, z);
      if (den == complex{}) {
        throw PointError(PointError::Kind::pole, z, "division by zero");
      }
      return num / den;
    }
    case Op::pow:
      return eval_pow(eval_node(*n.lhs, z), n.value, z);
    case Op::exp:
      return std::exp(eval_node(*n.lhs, z));
    case Op::log: {
      const complex w = eval_node(*n.lhs, z);
      if (w == complex{}) {
        throw PointError(PointError::Kind::branch_point, z, "log(0)");
      }
      return std::log(on_principal_side(w));
    }
    case Op::sqrt:
      return std::sqrt(on_principal_side(eval_node(*n.lhs, z)));
  }
  throw Error("corrupt expression node");
}

// Folds a unary function applied to a literal when it is defined there.
template <typename F>
Expr fold_or_make(Op op, const Expr& a, F&& f) {
  if (a.is_constant()) {
    try {
      return Expr(f(a.constant_value()));
    } catch (const PointError&) {
      // leave the node in place so evaluation reports the failure
    }
  }
  return Expr(make_node(op, {}, a.node()));
}

Expr derive(const Expr& e, bool bar) {
  const Node& n = *e.node();
  auto child = [](const NodePtr& p) { return Expr(p); };
  switch (n.op) {
    case Op::literal:
      return Expr();
    case Op::var:
      return bar ? Expr() : Expr(1.0);
    case Op::conj:
      return conj(derive(child(n.lhs), !bar));
    case Op::neg:
      return -derive(child(n.lhs), bar);
    case Op::add:
      return derive(child(n.lhs), bar) + derive(child(n.rhs), bar);
    case Op::sub:
      return derive(child(n.lhs), bar) - derive(child(n.rhs), bar);
    case Op::mul: {
      const Expr u = child(n.lhs), v = child(n.rhs);
      return derive(u, bar) * v + u * derive(v, bar);
    }
    case Op::div: {
      const Expr u = child(n.lhs), v = child(n.rhs);
      return (derive(u, bar) * v - u * derive(v, bar)) / pow(v, 2.0);
    }
    case Op::pow: {
      const Expr u = child(n.lhs);
      return Expr(n.value) * pow(u, n.value - 1.0) * derive(u, bar);
    }
    case Op::exp:
      return e * derive(child(n.lhs), bar);
    case Op::log:
      return derive(child(n.lhs), bar) / child(n.lhs);
    case Op::sqrt:
      return derive(child(n.lhs), bar) / (Expr(2.0) * e);
  }
  throw Error("corrupt expression node");
}

// ---------------------------------------------------------------- printing

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

struct Printed {
  std::string text;
  int prec;
};

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Printed print_literal(complex v) {
  const double re = v.real(), im = v.imag();
  if (im == 0.0 && !std::signbit(im) && re >= 0.0 && !std::signbit(re)) {
    return {format_real(re), kPrecAtom};
  }
  if (re == 0.0 && !std::signbit(re) && im > 0.0) {
    return {format_real(im) + "i", kPrecAtom};
  }
  if (im == 0.0 && !std::signbit(im)) return {"(" + format_real(re) + ")", kPrecAtom};
  std::string s = "(" + format_real(re);
  if (std::signbit(im)) {
    s += "-" + format_real(-im) + "i";
  } else {
    s += "+" + format_real(im) + "i";
  }
  return {s + ")", kPrecAtom};
}

Printed print(const Node& n);

std::string wrap(const Printed& p, bool parens) {
  return parens ? "(" + p.text + ")" : p.text;
}

Printed print_binary(const Node& n, const char* op, int prec) {
  const Printed l = print(*n.lhs), r = print(*n.rhs);
  return {wrap(l, l.prec < prec) + op + wrap(r, r.prec <= prec), prec};
}

Printed print(const Node& n) {
  switch (n.op) {
    case Op::literal:
      return print_literal(n.value);
    case Op::var:
      return {"z", kPrecAtom};
    case Op::conj:
      return {"conj(" + print(*n.lhs).text + ")", kPrecAtom};
    case Op::exp:
      return {"exp(" + print(*n.lhs).text + ")", kPrecAtom};
    case Op::log:
      return {"log(" + print(*n.lhs).text + ")", kPrecAtom};
    case Op::sqrt:
      return {"sqrt(" + print(*n.lhs).text + ")", kPrecAtom};
    case Op::neg: {
      const Printed c = print(*n.lhs);
      return {"-" + wrap(c, c.prec < kPrecNeg), kPrecNeg};
    }
    case Op::add:
      return print_binary(n, "+", kPrecAdd);
    case Op::sub:
      return print_binary(n, "-", kPrecAdd);
    case Op::mul:
      return print_binary(n, "*", kPrecMul);
    case Op::div:
      return print_binary(n, "/", kPrecMul);
    case Op::pow: {
      const Printed b = print(*n.lhs);
      return {wrap(b, b.prec < kPrecAtom) + "^" + print_literal(n.value).text,
              kPrecPow};
    }
  }
  throw Error("corrupt expression node");
}

// ----------------------------------------------------------------- parsing

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", 0);
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail_unexpected();
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail_unexpected() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (eat('+')) {
        e = e + parse_term();
      } else if (eat('-')) {
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_unary();
    for (;;) {
      if (eat('*')) {
        e = e * parse_unary();
      } else if (eat('/')) {
        e = e / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (eat('-')) return -parse_unary();
    if (eat('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!eat('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    Expr exponent = parse_unary();
    if (!exponent.is_constant()) {
      throw ParseError("exponent must be a constant", at);
    }
    return pow(base, exponent.constant_value());
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail_unexpected();
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (!eat(')')) expect_close();
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "z") return Expr::z();
      if (name == "i") return Expr(complex{0.0, 1.0});
      if (name == "conj" || name == "exp" || name == "log" || name == "sqrt") {
        if (!eat('(')) {
          skip_ws();
          throw ParseError("expected '(' after " + std::string(name), pos_);
        }
        Expr arg = parse_expr();
        if (!eat(')')) expect_close();
        if (name == "conj") return conj(arg);
        if (name == "exp") return exp(arg);
        if (name == "log") return log(arg);
        return sqrt(arg);
      }
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }
    fail_unexpected();
  }

  [[noreturn]] void expect_close() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected ')'", pos_);
    throw ParseError(std::string("expected ')' but found '") + text_[pos_] + "'",
                     pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (look < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    const auto res = std::from_chars(first, last, value);
    if (res.ec == std::errc::invalid_argument || res.ptr != last) {
      throw ParseError("malformed number", start);
    }
    if (res.ec == std::errc::result_out_of_range) {
      value = std::strtod(std::string(first, last).c_str(), nullptr);
    }
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !ident_char(text_[pos_ + 1]))) {
      ++pos_;
      return Expr(complex{0.0, value});
    }
    return Expr(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::size_t count_nodes(const Node& n) {
  std::size_t c = 1;
  if (n.lhs) c += count_nodes(*n.lhs);
  if (n.rhs) c += count_nodes(*n.rhs);
  return c;
}

bool has_conj(const Node& n) {
  if (n.op == Op::conj) return true;
  return (n.lhs && has_conj(*n.lhs)) || (n.rhs && has_conj(*n.rhs));
}

}  // namespace

Expr::Expr() : Expr(complex{}) {}
Expr::Expr(complex value) : node_(make_node(Op::literal, value)) {}
Expr::Expr(double value) : Expr(complex{value, 0.0}) {}

Expr Expr::z() {
  static const NodePtr var = make_node(Op::var);
  return Expr(var);
}

Expr Expr::parse(std::string_view text) { return Parser(text).parse(); }

complex Expr::evaluate(complex z) const { return eval_node(*node_, z); }

Expr Expr::dz() const { return derive(*this, false); }
Expr Expr::dzbar() const { return derive(*this, true); }

std::string Expr::str() const { return print(*node_).text; }

bool Expr::is_holomorphic() const { return !has_conj(*node_); }
std::size_t Expr::size() const { return count_nodes(*node_); }

complex ipow(complex base, long long exponent) {
  if (exponent < 0) return complex{1.0} / ipow(base, -exponent);
  complex result{1.0, 0.0};
  bool first = true;
  while (exponent > 0) {
    if (exponent & 1) {
      result = first ? base : result * base;
      first = false;
    }
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) {
    return Expr(a.constant_value() + b.constant_value());
  }
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Expr(make_node(Op::add, {}, a.node(), b.node()));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) {
    return Expr(a.constant_value() - b.constant_value());
  }
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return Expr(make_node(Op::sub, {}, a.node(), b.node()));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) {
    return Expr(a.constant_value() * b.constant_value());
  }
  if (a.is_zero() || b.is_zero()) return Expr();
  if (is_literal(a, 1.0)) return b;
  if (is_literal(b, 1.0)) return a;
  return Expr(make_node(Op::mul, {}, a.node(), b.node()));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && !b.is_zero()) {
    return Expr(a.constant_value() / b.constant_value());
  }
  if (a.is_zero() && !b.is_zero()) return Expr();
  if (is_literal(b, 1.0)) return a;
  return Expr(make_node(Op::div, {}, a.node(), b.node()));
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.constant_value());
  if (a.op() == Op::neg) return Expr(a.node()->lhs);
  return Expr(make_node(Op::neg, {}, a.node()));
}

Expr pow(const Expr& base, complex exponent) {
  if (exponent == complex{}) return Expr(1.0);
  if (exponent == complex{1.0}) return base;
  if (base.is_constant()) {
    try {
      return Expr(eval_pow(base.constant_value(), exponent, {}));
    } catch (const PointError&) {
    }
  }
  return Expr(make_node(Op::pow, exponent, base.node()));
}

Expr conj(const Expr& a) {
  if (a.is_constant()) return Expr(std::conj(a.constant_value()));
  if (a.op() == Op::conj) return Expr(a.node()->lhs);
  return Expr(make_node(Op::conj, {}, a.node()));
}

Expr exp(const Expr& a) {
  return fold_or_make(Op::exp, a, [](complex v) { return std::exp(v); });
}

Expr log(const Expr& a) {
  return fold_or_make(Op::log, a, [](complex v) {
    if (v == complex{}) {
      throw PointError(PointError::Kind::branch_point, {}, "log(0)");
    }
    return std::log(on_principal_side(v));
  });
}

Expr sqrt(const Expr& a) {
  return fold_or_make(Op::sqrt, a, [](complex v) {
    return std::sqrt(on_principal_side(v));
  });
}

}  // namespace qcext::cx
