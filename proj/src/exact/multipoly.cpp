#include "incwb/exact/multipoly.hpp"

#include <sstream>

namespace incwb {

namespace {

std::string coefficient_text(const Rational& c, bool& negative) {
  negative = c.sign() < 0;
  const Rational a = c.abs();
  return a.is_integer() ? a.numerator().get_str() : a.to_string();
}

std::string coefficient_text(const GaussianRational& c, bool& negative) {
  if (c.im.is_zero()) return coefficient_text(c.re, negative);
  if (c.re.is_zero()) {
    std::string s = coefficient_text(c.im, negative);
    return s == "1" ? "i" : s + "*i";
  }
  negative = false;
  return c.to_string();
}

bool is_unit_text(const std::string& s) { return s == "1"; }

}  // namespace

template <ExactField F>
std::string MultiPoly<F>::to_string(std::span<const std::string> names) const {
  std::vector<std::string> defaults;
  if (names.size() < num_vars_) {
    defaults = default_variable_names(num_vars_);
    names = defaults;
  }
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = false;
    std::string coef = coefficient_text(c, negative);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool constant = monomial_degree(m) == 0;
    bool need_star = false;
    if (constant || !is_unit_text(coef)) {
      os << coef;
      need_star = true;
    }
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (m[v] == 0) continue;
      if (need_star) os << "*";
      os << names[v];
      if (m[v] > 1) os << "^" << m[v];
      need_star = true;
    }
  }
  return os.str();
}

template class MultiPoly<Rational>;
template class MultiPoly<GaussianRational>;

ComplexPoly to_complex(const RealPoly& p) {
  ComplexPoly out(p.num_vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, GaussianRational(c));
  return out;
}

std::pair<RealPoly, RealPoly> split_coefficients(const ComplexPoly& p) {
  RealPoly re(p.num_vars()), im(p.num_vars());
  for (const auto& [m, c] : p.terms()) {
    re.add_term(m, c.re);
    im.add_term(m, c.im);
  }
  return {std::move(re), std::move(im)};
}

std::optional<RealPoly> as_real(const ComplexPoly& p) {
  auto [re, im] = split_coefficients(p);
  if (!im.is_zero()) return std::nullopt;
  return re;
}

namespace {

void accumulate_lcm(mpz_class& l, const Rational& r) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.value().get_den_mpz_t()); }

void accumulate_gcd(mpz_class& g, const Rational& r) { mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.value().get_num_mpz_t()); }

}  // namespace

RealPoly primitive(const RealPoly& p) {
  if (p.is_zero()) return p;
  RealPoly monic = p * p.leading_coefficient().inverse();
  mpz_class l = 1;
  for (const auto& [m, c] : monic.terms()) accumulate_lcm(l, c);
  RealPoly scaled = monic * Rational(l);
  mpz_class g = 0;
  for (const auto& [m, c] : scaled.terms()) accumulate_gcd(g, c);
  return scaled * Rational(mpz_class(1), g);
}

ComplexPoly primitive(const ComplexPoly& p) {
  if (p.is_zero()) return p;
  ComplexPoly monic = p * p.leading_coefficient().inverse();
  mpz_class l = 1;
  for (const auto& [m, c] : monic.terms()) {
    accumulate_lcm(l, c.re);
    accumulate_lcm(l, c.im);
  }
  ComplexPoly scaled = monic * GaussianRational(Rational(l));
  mpz_class g = 0;
  for (const auto& [m, c] : scaled.terms()) {
    accumulate_gcd(g, c.re);
    accumulate_gcd(g, c.im);
  }
  return scaled * GaussianRational(Rational(mpz_class(1), g));
}

std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("x" + std::to_string(k + 1));
  return names;
}

}  // namespace incwb
