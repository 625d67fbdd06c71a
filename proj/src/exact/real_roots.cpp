#include "incwb/exact/real_roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace incwb {

namespace {

void trim(DenseUnivariate& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

DenseUnivariate derivative(const DenseUnivariate& p) {
  DenseUnivariate d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  trim(d);
  return d;
}

// Remainder of a / b (b nonzero, trimmed).
DenseUnivariate remainder(DenseUnivariate a, const DenseUnivariate& b) {
  trim(a);
  const Rational inv_lead = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() * inv_lead;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

DenseUnivariate quotient(DenseUnivariate a, const DenseUnivariate& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  DenseUnivariate q(a.size() - b.size() + 1);
  const Rational inv_lead = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() * inv_lead;
    const std::size_t shift = a.size() - b.size();
    q[shift] = factor;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

DenseUnivariate make_monic(DenseUnivariate p) {
  trim(p);
  if (p.empty()) return p;
  const Rational inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

DenseUnivariate gcd(DenseUnivariate a, DenseUnivariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    DenseUnivariate r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

using IntPoly = std::vector<mpz_class>;

// Positive multiple of p with coprime integer coefficients; signs are unchanged.
IntPoly primitive_integer(const DenseUnivariate& p) {
  mpz_class den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.value().get_den_mpz_t());
  IntPoly out;
  out.reserve(p.size());
  mpz_class g = 0;
  for (const auto& c : p) {
    out.push_back(c.value().get_num() * (den / c.value().get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1)
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

// Sign of p(num / den) for den > 0, via the homogenized form sum c_k num^k den^(n-k).
int sign_at(const IntPoly& p, const mpz_class& num, const mpz_class& den) {
  if (p.empty()) return 0;
  mpz_class acc = p.back();
  mpz_class den_pow = 1;
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    acc *= num;
    den_pow *= den;
    acc += p[k] * den_pow;
  }
  return sgn(acc);
}

int sign_at(const IntPoly& p, const Rational& x) { return sign_at(p, x.value().get_num(), x.value().get_den()); }

using SturmSequence = std::vector<IntPoly>;

SturmSequence sturm_sequence(const DenseUnivariate& p) {
  std::vector<DenseUnivariate> seq{p, derivative(p)};
  SturmSequence out{primitive_integer(seq[0]), primitive_integer(seq[1])};
  while (!seq.back().empty()) {
    DenseUnivariate r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    // Positive rescaling keeps the sign pattern and stops coefficient growth.
    IntPoly z = primitive_integer(r);
    DenseUnivariate scaled;
    for (const auto& c : z) scaled.push_back(Rational(c, mpz_class(1)));
    seq.push_back(std::move(scaled));
    out.push_back(std::move(z));
  }
  return out;
}

int sign_variations(const SturmSequence& seq, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int sg = sign_at(s, x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++variations;
    last = sg;
  }
  return variations;
}

struct Isolator {
  IntPoly q;  // square-free
  SturmSequence seq;
  Rational tolerance;

  // Roots in (a, b].
  std::size_t count(const Rational& a, const Rational& b) const {
    return static_cast<std::size_t>(sign_variations(seq, a) - sign_variations(seq, b));
  }
  bool is_root(const Rational& x) const { return sign_at(q, x) == 0; }

  // Exactly one root in (a, b]; shrink until narrow and both endpoints are non-roots.
  RootInterval refine(Rational a, Rational b) const {
    while (true) {
      if (b - a < tolerance && !is_root(a) && !is_root(b)) return {a, b};
      if (b - a < tolerance && is_root(b)) return {b, b};
      const Rational mid = (a + b) * Rational(1, 2);
      if (is_root(mid)) return {mid, mid};
      if (count(a, mid) == 1)
        b = mid;
      else
        a = mid;
    }
  }

  void isolate(const Rational& a, const Rational& b, std::size_t n, std::vector<RootInterval>& out) const {
    if (n == 0) return;
    if (n == 1) {
      out.push_back(refine(a, b));
      return;
    }
    const Rational mid = (a + b) * Rational(1, 2);
    const std::size_t left = count(a, mid);
    isolate(a, mid, left, out);
    isolate(mid, b, n - left, out);
  }
};

}  // namespace

DenseUnivariate to_dense(const RealPoly& p) {
  if (p.num_vars() != 1) throw std::invalid_argument("to_dense: polynomial is not univariate");
  DenseUnivariate c(static_cast<std::size_t>(std::max(p.total_degree(), 0)) + 1, Rational(0));
  for (const auto& [m, coef] : p.terms()) c[m[0]] = coef;
  trim(c);
  return c;
}

RealPoly from_dense(const DenseUnivariate& c) {
  RealPoly p(1);
  for (std::size_t k = 0; k < c.size(); ++k) p.add_term(Monomial{static_cast<std::uint32_t>(k)}, c[k]);
  return p;
}

Rational evaluate_dense(const DenseUnivariate& c, const Rational& x) {
  Rational acc(0);
  for (std::size_t k = c.size(); k-- > 0;) {
    acc *= x;
    acc += c[k];
  }
  return acc;
}

DenseUnivariate square_free_part(const DenseUnivariate& p) {
  DenseUnivariate t = p;
  trim(t);
  if (t.empty()) throw std::invalid_argument("square_free_part: zero polynomial");
  if (t.size() == 1) return {Rational(1)};
  return make_monic(quotient(t, gcd(t, derivative(t))));
}

Rational cauchy_root_bound(const DenseUnivariate& p) {
  DenseUnivariate t = p;
  trim(t);
  if (t.empty()) throw std::invalid_argument("cauchy_root_bound: zero polynomial");
  Rational m(0);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) m = std::max(m, (t[k] / t.back()).abs());
  return m + Rational(1);
}

std::size_t count_distinct_roots(const DenseUnivariate& p, const Rational& lo, const Rational& hi) {
  const DenseUnivariate q = square_free_part(p);
  if (q.size() <= 1) return 0;
  const SturmSequence seq = sturm_sequence(q);
  return static_cast<std::size_t>(sign_variations(seq, lo) - sign_variations(seq, hi));
}

std::vector<RootInterval> isolate_real_roots(const DenseUnivariate& p, const Rational& lo, const Rational& hi,
                                             unsigned precision_bits) {
  if (hi < lo) throw std::invalid_argument("isolate_real_roots: empty query interval");
  Isolator iso;
  const DenseUnivariate sf = square_free_part(p);
  std::vector<RootInterval> out;
  if (sf.size() <= 1) return out;
  iso.q = primitive_integer(sf);
  iso.seq = sturm_sequence(sf);
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, precision_bits);
  iso.tolerance = Rational(mpz_class(1), two_pow);
  if (iso.is_root(lo)) out.push_back({lo, lo});
  if (lo != hi) iso.isolate(lo, hi, iso.count(lo, hi), out);

  // Neighbouring intervals may share an endpoint; split them apart.
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    while (out[k].hi >= out[k + 1].lo) {
      for (RootInterval* r : {&out[k], &out[k + 1]}) {
        if (r->exact()) continue;
        const Rational mid = (r->lo + r->hi) * Rational(1, 2);
        if (iso.is_root(mid))
          *r = {mid, mid};
        else if (iso.count(r->lo, mid) == 1)
          r->hi = mid;
        else
          r->lo = mid;
      }
    }
  }
  return out;
}

std::vector<RootInterval> isolate_real_roots(const RealPoly& p, const Rational& lo, const Rational& hi,
                                             unsigned precision_bits) {
  if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  return isolate_real_roots(to_dense(p), lo, hi, precision_bits);
}

namespace {

// Power of two above the Fujiwara bound 2 max |a_(n-k) / a_n|^(1/k); far tighter
// than the Cauchy bound when coefficients are large.
Rational dyadic_root_bound(const DenseUnivariate& p) {
  DenseUnivariate t = p;
  trim(t);
  const std::size_t n = t.size() - 1;
  long e = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational& c = t[n - k];
    if (c.is_zero()) continue;
    const Rational ratio = (c / t[n]).abs();
    // log2(ratio) < bits(num) - bits(den) + 1.
    const long log2_upper = static_cast<long>(mpz_sizeinbase(ratio.value().get_num_mpz_t(), 2)) -
                            static_cast<long>(mpz_sizeinbase(ratio.value().get_den_mpz_t(), 2)) + 1;
    const long kk = static_cast<long>(k);
    const long per_root = log2_upper >= 0 ? (log2_upper + kk - 1) / kk : -((-log2_upper) / kk);
    e = std::max(e, per_root);
  }
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 2, static_cast<unsigned long>(e + 2));
  return Rational(pow, mpz_class(1));
}

}  // namespace

std::vector<RootInterval> isolate_all_real_roots(const DenseUnivariate& p, unsigned precision_bits) {
  const Rational bound = std::min(cauchy_root_bound(p), dyadic_root_bound(p));
  return isolate_real_roots(p, -bound, bound, precision_bits);
}

}  // namespace incwb
