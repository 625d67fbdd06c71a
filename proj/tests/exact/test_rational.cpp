#include "incwb/exact/gaussian.hpp"
#include "incwb/exact/rational.hpp"
#include "random_exact.hpp"

#include <doctest.h>

using namespace incwb;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
  const Rational r(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r.to_string() == "-3/2");
  CHECK(Rational(0).to_string() == "0/1");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/9") == Rational(1, 3));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("-1.25") == Rational(-5, 4));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK_THROWS(Rational::parse("1/-2"));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("continued-fraction snapping respects the denominator cap") {
  const mpz_class cap(1000);
  const Rational pi = Rational::approximate(3.14159265358979, cap);
  CHECK(pi == Rational(355, 113));
  CHECK(Rational::approximate(0.5, cap) == Rational(1, 2));
  Rng rng(7);
  for (int k = 0; k < 200; ++k) {
    const double x = (rng.uniform01() - 0.5) * 100.0;
    const Rational a = Rational::approximate(x, mpz_class(1) << 32);
    CHECK(a.denominator() <= (mpz_class(1) << 32));
    CHECK(std::abs(a.to_double() - x) < 1e-9);
  }
}

TEST_CASE("gaussian rationals: field axioms and conjugation") {
  const GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(-1));
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const auto a = testing::random_gaussian(rng);
    const auto b = testing::random_gaussian(rng);
    const auto c = testing::random_gaussian(rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
    if (!a.is_zero()) CHECK(a * a.inverse() == GaussianRational(1));
  }
}
