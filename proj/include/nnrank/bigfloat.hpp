#pragma once

// Binary floating-point number with an arbitrary-size mantissa and an
// arbitrary-size exponent: value = mantissa * 2^exponent.
//
// The representation is canonical: the mantissa is odd (or zero, in which case
// the exponent is zero). Every rounding operation takes an explicit precision
// and direction; nothing here rounds to nearest.

#include "nnrank/rational.hpp"

#include <gmpxx.h>

#include <compare>
#include <string>

namespace nnrank {

enum class Round { Down, Up };

class BigFloat {
public:
  BigFloat() = default;
  BigFloat(long v) : BigFloat(mpz_class(v), mpz_class(0)) {}
  BigFloat(mpz_class mantissa, mpz_class exponent);

  static BigFloat pow2(const mpz_class& e) { return BigFloat(mpz_class(1), e); }

  /// Directed rounding of an exact rational to `prec` significant bits.
  static BigFloat from_rational(const Rational& q, long prec, Round dir);

  const mpz_class& mantissa() const { return mant_; }
  const mpz_class& exponent() const { return exp_; }

  int sign() const { return sgn(mant_); }
  bool is_zero() const { return mant_ == 0; }
  long bit_length() const;

  /// Smallest t with |x| < 2^t, i.e. exponent + bit_length. Undefined for zero.
  mpz_class top() const { return exp_ + bit_length(); }

  /// Exact conversion; throws std::range_error when |exponent| exceeds `max_shift` bits.
  Rational to_rational(long max_shift = 1L << 24) const;
  /// Approximate conversion for display; saturates to 0 or +-inf.
  double to_double() const;
  /// Approximate log2|x| for display; huge exponents yield +-inf.
  double log2_abs() const;

  /// floor(x) as an integer; throws std::range_error if the result is too large.
  mpz_class floor() const;

  BigFloat negate() const { return BigFloat(-mant_, exp_, Canonical{}); }
  BigFloat abs() const { return sign() < 0 ? negate() : *this; }
  BigFloat mul_pow2(const mpz_class& e) const;

  static BigFloat round(const mpz_class& mant, const mpz_class& exp, long prec, Round dir);
  static BigFloat add(const BigFloat& a, const BigFloat& b, long prec, Round dir);
  static BigFloat sub(const BigFloat& a, const BigFloat& b, long prec, Round dir) {
    return add(a, b.negate(), prec, dir);
  }
  static BigFloat mul(const BigFloat& a, const BigFloat& b, long prec, Round dir);
  static BigFloat div(const BigFloat& a, const BigFloat& b, long prec, Round dir);

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return a.mant_ == b.mant_ && a.exp_ == b.exp_;
  }
  friend std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  /// Exact comparison against a rational; the exponent must satisfy to_rational's limit.
  int compare(const Rational& q) const;

  std::string str() const;

private:
  struct Canonical {};
  BigFloat(mpz_class m, mpz_class e, Canonical) : mant_(std::move(m)), exp_(std::move(e)) {}
  void normalize();

  mpz_class mant_{0};
  mpz_class exp_{0};
};

const BigFloat& min(const BigFloat& a, const BigFloat& b);
const BigFloat& max(const BigFloat& a, const BigFloat& b);

} // namespace nnrank
