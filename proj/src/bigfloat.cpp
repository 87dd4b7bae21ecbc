#include "nnrank/bigfloat.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nnrank {

namespace {

long to_long_checked(const mpz_class& v, const char* what) {
  if (!v.fits_slong_p()) throw std::range_error(std::string("exponent out of range in ") + what);
  return v.get_si();
}

} // namespace

BigFloat::BigFloat(mpz_class mantissa, mpz_class exponent)
    : mant_(std::move(mantissa)), exp_(std::move(exponent)) {
  normalize();
}

void BigFloat::normalize() {
  if (mant_ == 0) {
    exp_ = 0;
    return;
  }
  const mp_bitcnt_t tz = mpz_scan1(mant_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), tz);
    exp_ += static_cast<unsigned long>(tz);
  }
}

long BigFloat::bit_length() const {
  if (mant_ == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(mant_.get_mpz_t(), 2));
}

BigFloat BigFloat::round(const mpz_class& mant, const mpz_class& exp, long prec, Round dir) {
  if (mant == 0) return BigFloat();
  const long n = static_cast<long>(mpz_sizeinbase(mant.get_mpz_t(), 2));
  if (n <= prec) return BigFloat(mant, exp);
  const long shift = n - prec;
  mpz_class mag = ::abs(mant);
  const bool inexact = static_cast<long>(mpz_scan1(mag.get_mpz_t(), 0)) < shift;
  mpz_class q;
  mpz_tdiv_q_2exp(q.get_mpz_t(), mag.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  const bool positive = mant > 0;
  if (inexact && ((dir == Round::Up && positive) || (dir == Round::Down && !positive))) q += 1;
  if (!positive) q = -q;
  return BigFloat(std::move(q), exp + shift);
}

BigFloat BigFloat::from_rational(const Rational& q, long prec, Round dir) {
  return div(BigFloat(q.num(), mpz_class(0)), BigFloat(q.den(), mpz_class(0)), prec, dir);
}

BigFloat BigFloat::add(const BigFloat& a, const BigFloat& b, long prec, Round dir) {
  if (a.is_zero()) return round(b.mant_, b.exp_, prec, dir);
  if (b.is_zero()) return round(a.mant_, a.exp_, prec, dir);

  const BigFloat* hi = &a;
  const BigFloat* lo = &b;
  if (a.top() < b.top()) std::swap(hi, lo);

  // When `lo` sits entirely below both the last bit of `hi` and the rounding
  // granularity, any same-signed value in that band rounds identically, so it
  // is replaced by a single sticky bit. This keeps shifts bounded even when
  // the exponents are astronomically far apart.
  const mpz_class hi_top = hi->top();
  mpz_class sticky_exp = hi_top - prec;
  if (hi->exp_ < sticky_exp) sticky_exp = hi->exp_;
  sticky_exp -= 3;

  BigFloat small = *lo;
  if (lo->top() <= sticky_exp) small = BigFloat(mpz_class(lo->sign()), sticky_exp, Canonical{});

  const mpz_class e = hi->exp_ < small.exp_ ? hi->exp_ : small.exp_;
  const long sh_hi = to_long_checked(hi->exp_ - e, "add");
  const long sh_lo = to_long_checked(small.exp_ - e, "add");
  mpz_class x = hi->mant_, y = small.mant_;
  mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(sh_hi));
  mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), static_cast<mp_bitcnt_t>(sh_lo));
  return round(x + y, e, prec, dir);
}

BigFloat BigFloat::mul(const BigFloat& a, const BigFloat& b, long prec, Round dir) {
  if (a.is_zero() || b.is_zero()) return BigFloat();
  return round(a.mant_ * b.mant_, a.exp_ + b.exp_, prec, dir);
}

BigFloat BigFloat::div(const BigFloat& a, const BigFloat& b, long prec, Round dir) {
  if (b.is_zero()) throw std::domain_error("BigFloat division by zero");
  if (a.is_zero()) return BigFloat();
  long s = prec + 2 + b.bit_length() - a.bit_length();
  if (s < 0) s = 0;
  mpz_class n = a.mant_;
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), b.mant_.get_mpz_t());
  mpz_class e = a.exp_ - b.exp_ - s;
  if (r != 0) {
    // The true quotient lies strictly between q and q +- 1: append a sticky bit.
    const int sign = sgn(a.mant_) * sgn(b.mant_);
    q = 2 * q + sign;
    e -= 1;
  }
  return round(q, e, prec, dir);
}

BigFloat BigFloat::mul_pow2(const mpz_class& e) const {
  if (is_zero()) return *this;
  return BigFloat(mant_, exp_ + e, Canonical{});
}

std::strong_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  const int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? std::strong_ordering::less : std::strong_ordering::greater;
  if (sa == 0) return std::strong_ordering::equal;
  int c;
  const int ct = cmp(a.top(), b.top());
  if (ct != 0) {
    c = ct;
  } else {
    // Equal tops bound the exponent gap by the mantissa lengths.
    const mpz_class e = a.exp_ < b.exp_ ? a.exp_ : b.exp_;
    mpz_class x = ::abs(a.mant_), y = ::abs(b.mant_);
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(mpz_class(a.exp_ - e).get_ui()));
    mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), static_cast<mp_bitcnt_t>(mpz_class(b.exp_ - e).get_ui()));
    c = cmp(x, y);
  }
  if (sa < 0) c = -c;
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

int BigFloat::compare(const Rational& q) const {
  const Rational diff = to_rational() - q;
  return diff.sign();
}

Rational BigFloat::to_rational(long max_shift) const {
  if (is_zero()) return Rational(0);
  if (::abs(exp_) > max_shift) throw std::range_error("BigFloat exponent too large for exact rational");
  const long e = exp_.get_si();
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  return e >= 0 ? Rational(mpz_class(mant_ * p)) : Rational(mant_, p);
}

mpz_class BigFloat::floor() const {
  if (is_zero()) return 0;
  if (exp_ >= 0) {
    if (exp_ > (1L << 26)) throw std::range_error("floor of BigFloat too large");
    mpz_class r = mant_;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), exp_.get_ui());
    return r;
  }
  const mpz_class shift = -exp_;
  if (shift > bit_length() + 1) return mant_ < 0 ? -1 : 0;
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), mant_.get_mpz_t(), shift.get_ui());
  return r;
}

double BigFloat::to_double() const {
  if (is_zero()) return 0.0;
  long e2 = 0;
  const double d = mpz_get_d_2exp(&e2, mant_.get_mpz_t());
  if (!exp_.fits_slong_p() || ::abs(exp_) > 100000) {
    return exp_ > 0 ? std::copysign(HUGE_VAL, d) : std::copysign(0.0, d);
  }
  return std::ldexp(d, static_cast<int>(std::clamp<long>(e2 + exp_.get_si(), INT_MIN / 2, INT_MAX / 2)));
}

double BigFloat::log2_abs() const {
  if (is_zero()) return -HUGE_VAL;
  long e2 = 0;
  const double d = mpz_get_d_2exp(&e2, mant_.get_mpz_t());
  return std::log2(std::fabs(d)) + static_cast<double>(e2) + exp_.get_d();
}

std::string BigFloat::str() const {
  if (is_zero()) return "0";
  long e2 = 0;
  const double d = mpz_get_d_2exp(&e2, mant_.get_mpz_t());
  std::ostringstream os;
  os.precision(17);
  const mpz_class e = exp_ + e2;
  if (e.fits_slong_p() && ::abs(e) < 1000) {
    os << std::ldexp(d, static_cast<int>(e.get_si()));
  } else {
    os << d << "*2^" << e.get_str();
  }
  return os.str();
}

const BigFloat& min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }
const BigFloat& max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

} // namespace nnrank
