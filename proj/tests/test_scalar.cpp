#include "oracles.hpp"

#include "nnrank/bigfloat.hpp"
#include "nnrank/interval.hpp"
#include "nnrank/rational.hpp"

#include <doctest.h>

#include <random>

using namespace nnrank;

TEST_CASE("rational parse and canonical text") {
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK(Rational::parse("-5").str() == "-5/1");
  CHECK(Rational::parse("0/7").str() == "0/1");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational::pow10(-3) == Rational(mpz_class(1), mpz_class(1000)));
  CHECK(Rational(mpz_class(2), mpz_class(-4)).str() == "-1/2");
}

TEST_CASE("rational field laws on random values") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Rational a = oracle::random_rational(rng, 1000, 97), b = oracle::random_rational(rng, 1000, 89),
                   c = oracle::random_rational(rng, 1000, 83);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(Rational::parse(a.str()) == a);
  }
}

TEST_CASE("bigfloat canonical form and directed rounding") {
  const BigFloat six(6);
  CHECK(six.mantissa() == 3);
  CHECK(six.exponent() == 1);
  const Rational third(mpz_class(1), mpz_class(3));
  const BigFloat lo = BigFloat::from_rational(third, 64, Round::Down);
  const BigFloat hi = BigFloat::from_rational(third, 64, Round::Up);
  CHECK(lo.compare(third) < 0);
  CHECK(hi.compare(third) > 0);
  CHECK(hi.to_rational() - lo.to_rational() <= Rational(mpz_class(1), mpz_class(1) << 64));
  CHECK(BigFloat::from_rational(Rational(5), 2, Round::Down) == BigFloat(4));
  CHECK(BigFloat::from_rational(Rational(5), 2, Round::Up) == BigFloat(6));
}

TEST_CASE("bigfloat add keeps far-apart operands correctly rounded") {
  const BigFloat one(1);
  const BigFloat tiny = BigFloat::pow2(mpz_class(-100000));
  CHECK(BigFloat::add(one, tiny, 53, Round::Down) == one);
  CHECK(BigFloat::add(one, tiny, 53, Round::Up) > one);
  CHECK(BigFloat::sub(one, tiny, 53, Round::Down) < one);
  CHECK(BigFloat::sub(one, tiny, 53, Round::Up) == one);
}

TEST_CASE("interval arithmetic encloses exact rational results") {
  std::mt19937_64 rng(5);
  for (long prec : {32L, 64L, 200L}) {
    for (int i = 0; i < 300; ++i) {
      const Rational a = oracle::random_rational(rng, 100000, 9973), b = oracle::random_rational(rng, 100000, 9967);
      const Interval ia = Interval::from_rational(a, prec), ib = Interval::from_rational(b, prec);
      CHECK(ia.contains(a));
      CHECK((ia + ib).contains(a + b));
      CHECK((ia - ib).contains(a - b));
      CHECK((ia * ib).contains(a * b));
      if (!ib.contains_zero()) CHECK((ia / ib).contains(a / b));
      CHECK((ia * ib).precision() == prec);
    }
  }
}

TEST_CASE("interval widths shrink with precision") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Rational a = oracle::random_rational(rng, 1000, 997), b = oracle::random_rational(rng, 1000, 991);
    if (b.is_zero()) continue;
    const Interval p = Interval::from_rational(a, 64) / Interval::from_rational(b, 64);
    const Interval q = Interval::from_rational(a, 128) / Interval::from_rational(b, 128);
    CHECK(q.width() <= p.width());
  }
}

TEST_CASE("literal intervals adopt the other operand's precision") {
  const Interval x = Interval::from_rational(Rational(mpz_class(1), mpz_class(3)), 100);
  CHECK((Interval(7) + x).precision() == 100);
  CHECK(Interval(2).precision() == 0);
  // Arithmetic on two literals is rounded, so the result is no longer a literal.
  const Interval six = Interval(2) * Interval(3);
  CHECK(six.precision() > 0);
  CHECK(six.contains(Rational(6)));
  CHECK_THROWS_AS(Interval(1) / Interval(0), std::domain_error);
  CHECK_THROWS_AS(Interval(BigFloat(2), BigFloat(1), 32), std::invalid_argument);
}

TEST_CASE("exp of -10 against a Taylor oracle") {
  const auto [lo, hi] = oracle::exp_bounds(Rational(-10), 60, 5);
  for (long prec : {64L, 256L, 1024L}) {
    const Interval e = interval_exp(Interval(-10), prec);
    // The enclosure must meet the oracle's interval and be narrow.
    CHECK(e.lo().compare(hi) <= 0);
    CHECK(e.hi().compare(lo) >= 0);
    // Relative width at most 2 * 2^-p.
    CHECK(e.width().to_rational() <= e.hi().to_rational() * Rational(mpz_class(2), mpz_class(1) << static_cast<unsigned long>(prec)));
  }
  // At 64 bits the oracle interval is far narrower than the enclosure, so it must be inside.
  const Interval e64 = interval_exp(Interval(-10), 64);
  CHECK(e64.lo().compare(lo) <= 0);
  CHECK(e64.hi().compare(hi) >= 0);
}

TEST_CASE("exp on random small arguments against the Taylor oracle") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const Rational x = -abs(oracle::random_rational(rng, 2000, 97));
    const auto [lo, hi] = oracle::exp_bounds(x, 80, 6);
    const Interval e = interval_exp(Interval::from_rational(x, 96), 96);
    CHECK(e.lo().compare(lo) <= 0);
    CHECK(e.hi().compare(hi) >= 0);
  }
}

TEST_CASE("exp of a huge negative argument keeps a positive enclosure") {
  // -2^40: result is about 2^(-1.59e12); the exponent is far beyond any machine format.
  const Interval x = Interval::point(BigFloat::pow2(mpz_class(40)).negate(), 64);
  const Interval e = interval_exp(x, 64);
  CHECK(e.sign_certificate() == Sign::Positive);
  const double expected = -std::ldexp(1.0, 40) / std::log(2.0);
  CHECK(std::abs(e.lo().log2_abs() - expected) < 1e-6 * std::abs(expected));

  const Interval beyond = Interval::point(BigFloat::pow2(mpz_class(kExpExponentBudgetBits + 2)).negate(), 64);
  const Interval z = interval_exp(beyond, 64);
  CHECK(z.lo().is_zero());
  CHECK(z.hi().sign() > 0);
  CHECK_THROWS_AS(interval_exp(-beyond, 64), std::overflow_error);
}

TEST_CASE("ln2 enclosure") {
  const Interval l = interval_ln2(200);
  // ln 2 in (0.6931471805599453, 0.6931471805599454)
  CHECK(l.lo().compare(Rational::parse("6931471805599453/10000000000000000")) > 0);
  CHECK(l.hi().compare(Rational::parse("6931471805599454/10000000000000000")) < 0);
  CHECK(l.width().log2_abs() < -195);
}
