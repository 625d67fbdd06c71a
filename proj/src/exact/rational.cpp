#include "incwb/exact/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace incwb {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  return Rational(mpq_class(1 / value_));
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("Rational: malformed integer '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("Rational: empty string");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("Rational: denominator must be positive");
    return Rational(parse_integer(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if (int_part.empty()) int_part = "0";
    if (frac.empty()) frac = "0";
    if (!all_digits(int_part) || !all_digits(frac))
      throw std::invalid_argument("Rational: malformed decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class num = mpz_class(std::string(int_part), 10) * scale + mpz_class(std::string(frac), 10);
    if (neg) num = -num;
    return Rational(num, scale);
  }
  return Rational(parse_integer(text));
}

Rational Rational::approximate(double x, const mpz_class& max_den) {
  if (!std::isfinite(x)) throw std::domain_error("Rational::approximate: non-finite input");
  if (max_den < 1) throw std::invalid_argument("Rational::approximate: max_den < 1");
  const mpq_class exact(x);
  if (exact.get_den() <= max_den) return Rational(exact);

  // Continued-fraction walk with a final semiconvergent check.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class n = exact.get_num(), d = exact.get_den();
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    mpz_class q2 = q0 + a * q1;
    if (q2 > max_den) break;
    mpz_class p2 = p0 + a * p1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    mpz_class r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  mpz_class k = (max_den - q0) / q1;
  mpq_class bound1(p0 + k * p1, q0 + k * q1);
  mpq_class bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  return ::abs(bound2 - exact) <= ::abs(bound1 - exact) ? Rational(bound2) : Rational(bound1);
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

}  // namespace incwb
