#include "holosym/error.hpp"
#include "holosym/poly.hpp"

#include <cctype>

namespace holosym {

namespace {

class Parser {
public:
  Parser(std::string_view text, int n) : text_(text), nvars_(static_cast<std::size_t>(n) + 2) {
    if (n < 0) {
      throw StructuralError("transversal dimension must be nonnegative");
    }
  }

  Poly parse() {
    Poly result = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    return result;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // Unary minus is only accepted at the head of an expression.
  Poly expr() {
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    }
    Poly acc = term();
    if (negate) {
      acc = -acc;
    }
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    while (peek('*')) {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (peek('^')) {
      ++pos_;
      std::size_t at = pos_;
      if (!at_digit()) {
        skip_ws();
        throw ParseError("exponent must be a nonnegative integer literal", pos_);
      }
      at = pos_;
      std::string e = digits();
      if (e.size() > 6) {
        throw ParseError("exponent too large", at);
      }
      unsigned long k = std::stoul(e);
      Poly r = Poly::constant(nvars_, Rational(1));
      for (unsigned long i = 0; i < k; ++i) {
        r *= b;
      }
      return r;
    }
    return b;
  }

  Poly base() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of input", pos_);
    }
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) {
        throw ParseError("expected ')'", pos_);
      }
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      Rational value(Integer(num, 10));
      if (peek('/')) {
        ++pos_;
        std::size_t at = pos_;
        if (!at_digit()) {
          throw ParseError("expected positive integer denominator", pos_);
        }
        at = pos_;
        Integer den(digits(), 10);
        if (den == 0) {
          throw ParseError("zero denominator", at);
        }
        value /= Rational(den);
      }
      return Poly::constant(nvars_, value);
    }
    if (c == 'v') {
      ++pos_;
      return Poly::variable(nvars_, 0);
    }
    if (c == 'u') {
      ++pos_;
      return Poly::variable(nvars_, nvars_ - 1);
    }
    if (c == 'x') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("expected coordinate index after 'x'", pos_);
      }
      std::string idx = digits();
      if (idx.size() > 6) {
        throw ParseError("unknown variable 'x" + idx + "'", at);
      }
      unsigned long i = std::stoul(idx);
      if (i == 0 || i + 2 > nvars_) {
        throw ParseError("unknown variable 'x" + idx + "' (n = " + std::to_string(nvars_ - 2) + ")",
                         at);
      }
      return Poly::variable(nvars_, i);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError("unknown variable '" + std::string(1, c) + "'", pos_);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

} // namespace

Poly parse_polynomial(std::string_view text, int n) { return Parser(text, n).parse(); }

} // namespace holosym
