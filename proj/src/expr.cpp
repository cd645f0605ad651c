#include "stagecert/expr.hpp"

#include <cctype>
#include <optional>

namespace stagecert {

namespace {

struct Value {
  std::optional<Rational> scalar;
  AlgebraElement element;
  bool is_scalar() const { return scalar.has_value(); }
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  AlgebraElement run() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (v.is_scalar()) {
      if (v.scalar->is_zero()) return {};
      error("a nonzero scalar is not an element of A_0");
    }
    return v.element;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Usage, "element expression at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    if (pos_ - start > 12) error("integer too large");
    return std::stol(s_.substr(start, pos_ - start));
  }

  long index_arg() {
    if (eat('(')) {
      const long v = integer();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    return integer();
  }

  Value add(Value a, Value b, bool minus) {
    if (minus) b = negate(b);
    if (a.is_scalar() && b.is_scalar()) return {*a.scalar + *b.scalar, {}};
    if (a.is_scalar() && a.scalar->is_zero()) return b;
    if (b.is_scalar() && b.scalar->is_zero()) return a;
    if (a.is_scalar() || b.is_scalar()) error("cannot add a scalar to an element (A_0 has no unit)");
    return {std::nullopt, a.element + b.element};
  }

  static Value negate(const Value& v) {
    if (v.is_scalar()) return {-*v.scalar, {}};
    return {std::nullopt, -v.element};
  }

  Value expr() {
    Value v = term();
    while (true) {
      if (eat('+'))
        v = add(v, term(), false);
      else if (eat('-'))
        v = add(v, term(), true);
      else
        return v;
    }
  }

  Value term() {
    Value v = unary();
    while (true) {
      if (eat('*')) {
        Value r = unary();
        if (v.is_scalar() && r.is_scalar())
          v = {*v.scalar * *r.scalar, {}};
        else if (v.is_scalar())
          v = {std::nullopt, r.element.scaled(*v.scalar)};
        else if (r.is_scalar())
          v = {std::nullopt, v.element.scaled(*r.scalar)};
        else
          v = {std::nullopt, v.element * r.element};
      } else if (eat('/')) {
        Value r = unary();
        if (!r.is_scalar()) error("division by an element");
        if (r.scalar->is_zero()) error("division by zero");
        if (v.is_scalar())
          v = {*v.scalar / *r.scalar, {}};
        else
          v = {std::nullopt, v.element.scaled(r.scalar->inverse())};
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) return negate(unary());
    return power();
  }

  Value power() {
    Value v = atom();
    if (eat('^')) {
      const long k = integer();
      if (v.is_scalar()) return {v.scalar->pow(k), {}};
      if (k < 1) error("element powers start at 1");
      return {std::nullopt, v.element.pow(k)};
    }
    return v;
  }

  Value atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return {Rational(integer()), {}};
    if (eat('(')) {
      Value v = expr();
      if (!eat(')')) error("expected ')'");
      return v;
    }
    if (eat_word("gn")) return {std::nullopt, make_gn(index_arg())};
    if (eat_word("g_")) return {std::nullopt, make_gn(integer())};
    if (eat_word("g")) return {std::nullopt, make_g()};
    if (eat_word("e")) {
      const long i = index_arg();
      if (i < 1) error("e_i needs i >= 1");
      return {std::nullopt, make_e(i)};
    }
    if (eat_word("P")) return {std::nullopt, make_Pn(index_arg())};
    error("unknown token '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement parse_element(const std::string& text) { return Parser(text).run(); }

}  // namespace stagecert
