#include "oracles.hpp"

#include "nnrank/construction.hpp"
#include "nnrank/symbolic.hpp"

#include <doctest.h>

#include <random>

using namespace nnrank;

namespace {

Rational q(long n, long d = 1) { return Rational(mpz_class(n), mpz_class(d)); }

} // namespace

TEST_CASE("Lambda") {
  const Matrix<Rational> l = build_lambda<Rational>();
  CHECK(l(0, 0) == q(1));
  CHECK(l(1, 2) == q(-1));
  CHECK(l(2, 1) == q(-1));
  CHECK(l(1, 1) == q(1));
  CHECK(oracle::cofactor_det(l) == q(-4));
  // Characteristic polynomial (x + 1)(x - 2)^2: check det(Lambda - x I) at a few points.
  for (long x : {-1L, 2L, 0L, 5L}) {
    Matrix<Rational> m = l;
    for (int i = 0; i < 3; ++i) m(i, i) = m(i, i) - q(x);
    CHECK(oracle::cofactor_det(m) == -(q(x) + q(1)) * (q(x) - q(2)) * (q(x) - q(2)));
  }
}

TEST_CASE("B rows at h = 1") {
  const auto odd = b_row_odd(q(1));
  const auto even = b_row_even(q(1));
  CHECK(odd[0] == q(1));
  CHECK(odd[1] == q(39, 8));
  CHECK(odd[2] == q(7));
  CHECK(even[0] == q(1));
  CHECK(even[1] == q(15));
  CHECK(even[2] == q(32, 25));
}

TEST_CASE("within-pair products vanish at random rational h") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Rational h = oracle::random_rational(rng, 500, 37);
    CHECK(lambda_form(b_row_odd(h), b_row_even(h)).is_zero());
    CHECK(lambda_form(b_row_even(h), b_row_odd(h)).is_zero());
  }
}

TEST_CASE("surrogate bundle shapes, symmetry and pair zeros") {
  for (long k : {1L, 2L, 3L, 5L}) {
    const ExactBundle b = construct_surrogate(k);
    CHECK(b.b.rows() == 2 * k);
    CHECK(b.a.rows() == 2 * k);
    CHECK(b.a.cols() == 2 * k);
    CHECK(static_cast<long>(b.h.size()) == k);
    for (long p = 0; p < 2 * k; ++p)
      for (long r = 0; r < 2 * k; ++r) {
        CHECK(b.a(p, r) == b.a(r, p));
        const bool pair = p != r && p / 2 == r / 2;
        CHECK(b.a(p, r).is_zero() == pair);
      }
  }
  // A = B Lambda B^T through plain Eigen products.
  const ExactBundle b = construct_surrogate(3);
  const Matrix<Rational> direct = b.b * b.lambda * b.b.transpose();
  CHECK(direct == b.a);
}

TEST_CASE("surrogate chain values") {
  const auto h = SurrogateSpec{}.values(9);
  CHECK(h[0] == Rational::pow10(-2));
  CHECK(h[8] == Rational::pow10(-512));
  const auto list = SurrogateSpec::parse("list:1/2,1/3,1/5");
  CHECK(list.values(3)[2] == q(1, 5));
  CHECK_THROWS_AS(list.values(4), std::invalid_argument);
  CHECK_THROWS_AS(SurrogateSpec::parse("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(hchain_surrogate(3, SurrogateSpec::parse("list:1/2,1/2,1/3")), std::invalid_argument);
  CHECK_THROWS_AS(hchain_surrogate(2, SurrogateSpec::parse("list:1/2,-1/3")), std::invalid_argument);
  CHECK_THROWS_AS(construct_surrogate(0), std::invalid_argument);
}

TEST_CASE("exp chain magnitudes") {
  const HChain<Interval> c = hchain_paper(4, q(1, 10), 2048);
  REQUIRE(c.values.size() == 4);
  // h2 = e^-10 against the Taylor oracle.
  const auto [lo, hi] = oracle::exp_bounds(q(-10), 60, 5);
  CHECK(c.values[1].lo().compare(hi) <= 0);
  CHECK(c.values[1].hi().compare(lo) >= 0);
  // h3 = e^(-e^10): log2 h3 = -e^10 / ln 2 ~ -31777.4.
  CHECK(c.values[2].lo().log2_abs() == doctest::Approx(-std::exp(10.0) / std::log(2.0)).epsilon(1e-9));
  CHECK(c.values[2].hi().top() == -31777);
  // h4 = e^(-1/h3): its base-2 exponent is itself a number of about 9567 decimal digits.
  const mpz_class e4 = c.values[3].hi().top();
  CHECK(e4 < 0);
  CHECK(mpz_class(-e4).get_str().size() >= 9566);
  CHECK(mpz_class(-e4).get_str().size() <= 9568);
  for (const Interval& h : c.values) CHECK(h.sign_certificate() == Sign::Positive);
}

TEST_CASE("exp chain: precision exhaustion and validation") {
  try {
    (void)hchain_paper(5, q(1, 10), 256);
    FAIL("expected PrecisionExhausted");
  } catch (const PrecisionExhausted& e) {
    CHECK(e.index() == 5);
  }
  CHECK_THROWS_AS(hchain_paper(0, q(1, 10), 256), std::invalid_argument);
  CHECK_THROWS_AS(hchain_paper(3, q(1), 256), std::invalid_argument);
  CHECK_THROWS_AS(hchain_paper(3, q(1, 10), 16), std::invalid_argument);
}

TEST_CASE("interval bundle encloses the exact construction at rational points") {
  // Same formulas on an interval chain equal to rational points must enclose the exact result.
  const std::vector<Rational> hs{q(1, 10), q(1, 50), q(1, 300)};
  std::vector<Interval> hi;
  for (const Rational& h : hs) hi.push_back(Interval::from_rational(h, 128));
  const Matrix<Interval> bi = build_b(hi);
  const Matrix<Interval> ai = build_a(bi, build_lambda<Interval>());
  const Matrix<Rational> br = build_b(hs);
  const Matrix<Rational> ar = build_a(br, build_lambda<Rational>());
  for (Eigen::Index i = 0; i < ai.rows(); ++i)
    for (Eigen::Index j = 0; j < ai.cols(); ++j) CHECK(ai(i, j).contains(ar(i, j)));
}

TEST_CASE("expanded entries enclose the exact construction") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> hs;
    for (int i = 0; i < 3; ++i) hs.push_back(abs(oracle::random_rational(rng, 9, 40)) + q(1, 1000));
    std::vector<Interval> hi;
    for (const Rational& h : hs) hi.push_back(Interval::from_rational(h, 96));
    const Matrix<Interval> ai = build_a_expanded(hi, 96);
    const Matrix<Rational> ar = build_a(build_b(hs), build_lambda<Rational>());
    for (Eigen::Index i = 0; i < ai.rows(); ++i)
      for (Eigen::Index j = 0; j < ai.cols(); ++j) CHECK(ai(i, j).contains(ar(i, j)));
  }
}

TEST_CASE("expanded entry numerators vanish on the diagonal of a pair") {
  // N(x, x) for odd/even rows is the pair identity times the denominators.
  const EntryExpansion e = entry_expansion(true, false);
  for (long t : {0L, 1L, 3L, 10L}) {
    Rational acc(0);
    for (std::size_t i = 0; i < e.num.size(); ++i)
      for (std::size_t j = 0; j < e.num[i].size(); ++j)
        acc += e.num[i][j] * nnrank::pow(Rational(t), static_cast<unsigned long>(i + j));
    CHECK(acc.is_zero());
  }
  CHECK(e.num[0][0].is_zero());
}

TEST_CASE("expanded entries stay sharp where the plain product cancels") {
  const IntervalBundle b = construct_paper(4, q(1, 10), 65536);
  const Matrix<Interval> plain = build_a(b.b, b.lambda);
  // Row 5 at h3, column 8 at h4: the value is about (2/7) h3^3.
  CHECK(plain(4, 7).contains_zero());
  CHECK(b.a(4, 7).sign_certificate() == Sign::Positive);
  CHECK(!(b.a(4, 7).hi() < plain(4, 7).lo()));
  CHECK(!(plain(4, 7).hi() < b.a(4, 7).lo()));
  CHECK(b.a(4, 7).hi().top() < -95000);
}

TEST_CASE("interval bundle: exact pair zeros carry the bundle precision") {
  const IntervalBundle b = construct_paper(3, q(1, 10), 512);
  for (long i = 0; i < 3; ++i) {
    const Interval& z = b.a(2 * i, 2 * i + 1);
    CHECK(z.is_point());
    CHECK(z.lo().is_zero());
    CHECK(z.precision() == 512);
  }
  for (Eigen::Index i = 0; i < b.a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.a.cols(); ++j) CHECK(b.a(i, j).precision() == 512);
  CHECK(b.mode.kind == ScalarKind::PaperInterval);
}

TEST_CASE("symbolic pair identity") {
  const SymbolicCertificate c = verify_pair_orthogonality();
  CHECK(c.proved());
  REQUIRE(c.function);
  CHECK(c.function->num().is_zero());
  CHECK(c.function->num().degree() == -1);
}

TEST_CASE("symbolic denominators") {
  CHECK(verify_denominators_positive().proved());
}

TEST_CASE("positivity range H* from an independent bisection") {
  // Smallest positive root of 21 + 8h + 4h^2 - h^3 by plain rational bisection.
  const std::vector<Rational> num{q(21), q(8), q(4), q(-1)};
  Rational lo(0), hi(100);
  CHECK(oracle::eval(num, lo).sign() > 0);
  CHECK(oracle::eval(num, hi).sign() < 0);
  for (int i = 0; i < 60; ++i) {
    const Rational mid = (lo + hi) / q(2);
    (oracle::eval(num, mid).sign() > 0 ? lo : hi) = mid;
  }
  CHECK(oracle::grid_sign_changes(num, q(0), q(5), 5000) == 0);
  const double root = lo.to_double();
  const long thousandths = static_cast<long>(std::floor(root * 1000.0));
  CHECK(thousandths == 5941);

  const SymbolicCertificate c = verify_b_entry_positivity_range();
  CHECK(c.proved());
  REQUIRE(c.h_star);
  CHECK(*c.h_star == q(thousandths, 1000));
  // Beyond the root the even-row third entry is negative.
  CHECK(b_row_even(q(6))[2].sign() < 0);
  CHECK(b_row_even(*c.h_star)[2].sign() > 0);
}
