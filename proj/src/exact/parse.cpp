#include "incwb/exact/parse.hpp"

#include <cctype>
#include <stdexcept>

namespace incwb {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> vars) : text_(text), vars_(vars) {}

  ComplexPoly parse() {
    ComplexPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ComplexPoly constant(const GaussianRational& c) const { return ComplexPoly::constant(vars_.size(), c); }

  ComplexPoly expression() {
    ComplexPoly acc = accept('-') ? -term() : (accept('+'), term());
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  bool starts_factor(char c) const {
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  ComplexPoly term() {
    ComplexPoly acc = power();
    while (true) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        ComplexPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division is only allowed by a nonzero constant");
        acc *= d.constant_term().inverse();
      } else if (starts_factor(peek())) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  ComplexPoly power() {
    ComplexPoly base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      return pow(base, static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  ComplexPoly primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ComplexPoly inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
      return constant(GaussianRational(Rational::parse(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t v = 0; v < vars_.size(); ++v)
        if (vars_[v] == name) return ComplexPoly::variable(vars_.size(), v);
      if (name == "i" || name == "I") return constant(GaussianRational::i());
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

ComplexPoly parse_polynomial(std::string_view text, std::span<const std::string> variables) {
  return Parser(text, variables).parse();
}

RealPoly parse_real_polynomial(std::string_view text, std::span<const std::string> variables) {
  auto real = as_real(parse_polynomial(text, variables));
  if (!real) throw std::invalid_argument("polynomial has non-real coefficients");
  return *real;
}

}  // namespace incwb
