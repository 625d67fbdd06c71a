#pragma once

#include "incwb/exact/field.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace incwb {

using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t monomial_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Graded lexicographic order, largest first. Leading term = first term.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Sparse multivariate polynomial with exact coefficients. No zero
/// coefficient is ever stored, so structural equality is polynomial equality.
template <ExactField F>
class MultiPoly {
 public:
  using Coefficient = F;
  using TermMap = std::map<Monomial, F, GradedLexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t num_vars) : num_vars_(num_vars) {}

  static MultiPoly constant(std::size_t num_vars, const F& c) {
    MultiPoly p(num_vars);
    p.add_term(Monomial(num_vars, 0), c);
    return p;
  }
  static MultiPoly variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw std::out_of_range("MultiPoly::variable: index out of range");
    Monomial m(num_vars, 0);
    m[index] = 1;
    MultiPoly p(num_vars);
    p.add_term(m, F(1));
    return p;
  }
  static MultiPoly monomial(std::size_t num_vars, Monomial exps, const F& c) {
    if (exps.size() != num_vars) throw std::invalid_argument("MultiPoly::monomial: exponent length mismatch");
    MultiPoly p(num_vars);
    p.add_term(exps, c);
    return p;
  }

  [[nodiscard]] std::size_t num_vars() const { return num_vars_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
  }
  [[nodiscard]] int total_degree() const {
    return terms_.empty() ? -1 : static_cast<int>(monomial_degree(terms_.begin()->first));
  }
  [[nodiscard]] int degree_in(std::size_t var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, static_cast<int>(m[var]));
    return d;
  }
  [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
  [[nodiscard]] const TermMap& terms() const { return terms_; }

  [[nodiscard]] const Monomial& leading_monomial() const {
    if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading term");
    return terms_.begin()->first;
  }
  [[nodiscard]] const F& leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("MultiPoly: zero polynomial has no leading term");
    return terms_.begin()->second;
  }
  [[nodiscard]] F coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? F(0) : it->second;
  }
  [[nodiscard]] F constant_term() const { return coefficient(Monomial(num_vars_, 0)); }

  void add_term(const Monomial& m, const F& c) {
    if (m.size() != num_vars_) throw std::invalid_argument("MultiPoly::add_term: exponent length mismatch");
    if (is_zero_coef(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_coef(it->second)) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const F& s) {
    if (is_zero_coef(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const F& s) { return a *= s; }
  friend MultiPoly operator*(const F& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.num_vars_);
    Monomial m(a.num_vars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  /// Exact value at `point`. Works for any field E that F embeds into.
  template <ExactField E = F>
  [[nodiscard]] E evaluate(std::span<const E> point) const {
    if (point.size() != num_vars_) throw std::invalid_argument("MultiPoly::evaluate: dimension mismatch");
    std::vector<std::vector<E>> powers(num_vars_);
    for (std::size_t v = 0; v < num_vars_; ++v) {
      const int d = degree_in(v);
      powers[v].reserve(static_cast<std::size_t>(std::max(d, 0)) + 1);
      powers[v].push_back(E(1));
      for (int e = 1; e <= d; ++e) powers[v].push_back(powers[v].back() * point[v]);
    }
    E acc(0);
    for (const auto& [m, c] : terms_) {
      E t = convert<E>(c);
      for (std::size_t v = 0; v < num_vars_; ++v)
        if (m[v] != 0) t *= powers[v][m[v]];
      acc += t;
    }
    return acc;
  }
  template <ExactField E = F>
  [[nodiscard]] E evaluate(const std::vector<E>& point) const {
    return evaluate<E>(std::span<const E>(point));
  }

  /// Coefficients of p viewed as a polynomial in `var`: entry k multiplies var^k.
  /// The returned polynomials keep num_vars() variables with var's exponent 0.
  [[nodiscard]] std::vector<MultiPoly> coefficients_in(std::size_t var) const {
    std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1, MultiPoly(num_vars_));
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      rest[var] = 0;
      out[m[var]].add_term(rest, c);
    }
    return out;
  }

  [[nodiscard]] std::string to_string(std::span<const std::string> names = {}) const;

 private:
  template <class E>
  static E convert(const F& c) {
    if constexpr (std::is_same_v<E, F>) {
      return c;
    } else {
      return E(c);
    }
  }
  static bool is_zero_coef(const F& c) { return FieldTraits<F>::is_zero(c); }
  void check_compatible(const MultiPoly& o) const {
    if (o.num_vars_ != num_vars_) throw std::invalid_argument("MultiPoly: variable count mismatch");
  }

  std::size_t num_vars_ = 0;
  TermMap terms_;
};

using RealPoly = MultiPoly<Rational>;
using ComplexPoly = MultiPoly<GaussianRational>;

template <ExactField F>
MultiPoly<F> pow(const MultiPoly<F>& p, unsigned exponent) {
  MultiPoly<F> result = MultiPoly<F>::constant(p.num_vars(), F(1));
  MultiPoly<F> base = p;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

template <ExactField F>
MultiPoly<F> partial_derivative(const MultiPoly<F>& p, std::size_t var) {
  if (var >= p.num_vars()) throw std::out_of_range("partial_derivative: variable index out of range");
  MultiPoly<F> d(p.num_vars());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    dm[var] -= 1;
    d.add_term(dm, c * F(static_cast<long>(m[var])));
  }
  return d;
}

template <ExactField F, ExactField E = F>
std::vector<E> gradient(const MultiPoly<F>& p, std::span<const E> point) {
  std::vector<E> g;
  g.reserve(p.num_vars());
  for (std::size_t v = 0; v < p.num_vars(); ++v) g.push_back(partial_derivative(p, v).template evaluate<E>(point));
  return g;
}

template <ExactField F, ExactField E>
std::vector<E> gradient(const MultiPoly<F>& p, const std::vector<E>& point) {
  return gradient<F, E>(p, std::span<const E>(point));
}

template <ExactField F>
std::vector<MultiPoly<F>> gradient_polys(const MultiPoly<F>& p) {
  std::vector<MultiPoly<F>> g;
  for (std::size_t v = 0; v < p.num_vars(); ++v) g.push_back(partial_derivative(p, v));
  return g;
}

/// Substitutes images[v] for variable v. All images must share one variable count.
template <ExactField F>
MultiPoly<F> compose(const MultiPoly<F>& p, std::span<const MultiPoly<F>> images) {
  if (images.size() != p.num_vars()) throw std::invalid_argument("compose: need one image per variable");
  const std::size_t target_vars = images.empty() ? 0 : images.front().num_vars();
  for (const auto& img : images)
    if (img.num_vars() != target_vars) throw std::invalid_argument("compose: images disagree on variable count");
  std::vector<std::vector<MultiPoly<F>>> powers(p.num_vars());
  for (std::size_t v = 0; v < p.num_vars(); ++v) {
    powers[v].push_back(MultiPoly<F>::constant(target_vars, F(1)));
    const int d = p.degree_in(v);
    for (int e = 1; e <= d; ++e) powers[v].push_back(powers[v].back() * images[v]);
  }
  MultiPoly<F> out(target_vars);
  for (const auto& [m, c] : p.terms()) {
    MultiPoly<F> t = MultiPoly<F>::constant(target_vars, c);
    for (std::size_t v = 0; v < p.num_vars(); ++v)
      if (m[v] != 0) t *= powers[v][m[v]];
    out += t;
  }
  return out;
}

template <ExactField F>
MultiPoly<F> compose(const MultiPoly<F>& p, const std::vector<MultiPoly<F>>& images) {
  return compose(p, std::span<const MultiPoly<F>>(images));
}

/// Quotient p / q when q divides p exactly, std::nullopt otherwise.
template <ExactField F>
std::optional<MultiPoly<F>> exact_divide(const MultiPoly<F>& p, const MultiPoly<F>& q) {
  if (q.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
  MultiPoly<F> rem = p;
  MultiPoly<F> quot(p.num_vars());
  const Monomial& lq = q.leading_monomial();
  const F inv_lc = F(1) / q.leading_coefficient();
  while (!rem.is_zero()) {
    const Monomial& lr = rem.leading_monomial();
    Monomial t(lr.size());
    for (std::size_t k = 0; k < lr.size(); ++k) {
      if (lr[k] < lq[k]) return std::nullopt;
      t[k] = lr[k] - lq[k];
    }
    auto step = MultiPoly<F>::monomial(p.num_vars(), t, rem.leading_coefficient() * inv_lc);
    quot += step;
    rem -= step * q;
  }
  return quot;
}

ComplexPoly to_complex(const RealPoly& p);
/// Splits coefficients: p = re + i*im.
std::pair<RealPoly, RealPoly> split_coefficients(const ComplexPoly& p);
/// Returns the polynomial if every coefficient is real.
std::optional<RealPoly> as_real(const ComplexPoly& p);

/// Canonical representative of the zero set: leading coefficient made a
/// positive integer, all coefficients integral (Gaussian integral) with
/// content 1. Zero maps to zero.
RealPoly primitive(const RealPoly& p);
ComplexPoly primitive(const ComplexPoly& p);

/// Default variable names x1..xn.
std::vector<std::string> default_variable_names(std::size_t n);

extern template class MultiPoly<Rational>;
extern template class MultiPoly<GaussianRational>;

}  // namespace incwb
