#include "dbar/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "dbar/errors.hpp"

namespace dbar {

namespace {

using cplx = std::complex<double>;
using Node = std::function<cplx(cplx, cplx)>;

class Parser {
public:
  explicit Parser(const std::string& text) : s_(text) {}

  Node parse() {
    Node n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DataError("expression '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
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

  Node expr() {
    Node lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = [a = lhs, b = term()](cplx z, cplx t) { return a(z, t) + b(z, t); };
      } else if (eat('-')) {
        lhs = [a = lhs, b = term()](cplx z, cplx t) { return a(z, t) - b(z, t); };
      } else {
        return lhs;
      }
    }
  }

  Node term() {
    Node lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = [a = lhs, b = unary()](cplx z, cplx t) { return a(z, t) * b(z, t); };
      } else if (eat('/')) {
        lhs = [a = lhs, b = unary()](cplx z, cplx t) { return a(z, t) / b(z, t); };
      } else {
        return lhs;
      }
    }
  }

  Node unary() {
    if (eat('-')) return [a = unary()](cplx z, cplx t) { return -a(z, t); };
    if (eat('+')) return unary();
    return power();
  }

  Node power() {
    Node base = primary();
    if (!eat('^')) return base;
    Node ex = unary();
    return [base, ex](cplx z, cplx t) {
      const cplx e = ex(z, t);
      // Integer powers by repeated multiplication keep polynomials exact.
      if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) <= 64.0) {
        const int k = static_cast<int>(e.real());
        cplx acc = 1.0;
        const cplx b = base(z, t);
        for (int j = 0; j < std::abs(k); ++j) acc *= b;
        return k >= 0 ? acc : 1.0 / acc;
      }
      return std::pow(base(z, t), e);
    };
  }

  std::string word() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Node primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Node inner = expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      if (pos_ < s_.size() && s_[pos_] == 'i' &&
          (pos_ + 1 == s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_ + 1])))) {
        ++pos_;
        return [v](cplx, cplx) { return cplx(0.0, v); };
      }
      return [v](cplx, cplx) { return cplx(v, 0.0); };
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    const std::size_t at = pos_;
    const std::string w = word();
    if (w == "z" || w == "zeta") return [](cplx z, cplx) { return z; };
    if (w == "T") return [](cplx, cplx t) { return t; };
    if (w == "i") return [](cplx, cplx) { return cplx(0.0, 1.0); };
    if (w == "pi") return [](cplx, cplx) { return cplx(3.14159265358979323846, 0.0); };
    if (w == "conj" || w == "exp") {
      Node arg = [](cplx z, cplx) { return z; };
      if (eat('(')) {
        arg = expr();
        if (!eat(')')) fail("missing ')'");
      }
      if (w == "conj") return [arg](cplx z, cplx t) { return std::conj(arg(z, t)); };
      return [arg](cplx z, cplx t) { return std::exp(arg(z, t)); };
    }
    pos_ = at;
    fail("unknown name '" + w + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

BoundaryExpression parse_expression(const std::string& text) { return Parser(text).parse(); }

}  // namespace dbar
