#include "nnrank/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <ostream>

namespace nnrank {

namespace {

// RAII holder for an MPFR value.
class Mpfr {
public:
  explicit Mpfr(long prec) { mpfr_init2(v_, static_cast<mpfr_prec_t>(prec)); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

private:
  mpfr_t v_;
};

// Exact when the MPFR precision covers the mantissa.
void set_mpfr(Mpfr& out, const BigFloat& x) {
  if (!x.exponent().fits_slong_p()) throw std::range_error("exponent outside MPFR range");
  mpfr_set_z_2exp(out.get(), x.mantissa().get_mpz_t(), x.exponent().get_si(), MPFR_RNDN);
}

BigFloat from_mpfr(Mpfr& x) {
  if (mpfr_zero_p(x.get())) return BigFloat();
  mpz_class m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.get());
  return BigFloat(std::move(m), mpz_class(static_cast<long>(e)));
}

Interval exp_of_point(const BigFloat& v, long prec) {
  if (v.is_zero()) return Interval(BigFloat(1), BigFloat(1), prec);
  const mpz_class top = v.top();
  if (top > kExpExponentBudgetBits) {
    if (v.sign() > 0) throw std::overflow_error("interval_exp: argument exceeds the exponent budget");
    // v <= -2^budget, hence e^v < 2^(-2^budget).
    mpz_class e = 1;
    mpz_mul_2exp(e.get_mpz_t(), e.get_mpz_t(), kExpExponentBudgetBits);
    return Interval(BigFloat(), BigFloat::pow2(-e), prec);
  }

  // e^v = 2^n * e^(f ln2) with n = floor(v / ln2), f in [0, 1).
  const long int_bits = top > 0 ? top.get_si() : 0;
  const long wp = prec + int_bits + 64;
  const Interval ln2 = interval_ln2(wp);
  const Interval t = Interval::point(v, wp) / ln2;
  const mpz_class n = t.lo().floor();
  const BigFloat nf(n, mpz_class(0));
  const BigFloat f_lo = BigFloat::sub(t.lo(), nf, wp, Round::Down);
  const BigFloat f_hi = BigFloat::sub(t.hi(), nf, wp, Round::Up);

  const long kp = prec + 64;
  const BigFloat y_lo = BigFloat::mul(f_lo, ln2.lo(), kp, Round::Down);
  const BigFloat y_hi = BigFloat::mul(f_hi, ln2.hi(), kp, Round::Up);

  Mpfr arg(std::max(kp, y_lo.bit_length()) + 1), out(kp);
  set_mpfr(arg, y_lo);
  mpfr_exp(out.get(), arg.get(), MPFR_RNDD);
  const BigFloat e_lo = from_mpfr(out);
  mpfr_set_prec(arg.get(), std::max(kp, y_hi.bit_length()) + 1);
  set_mpfr(arg, y_hi);
  mpfr_exp(out.get(), arg.get(), MPFR_RNDU);
  const BigFloat e_hi = from_mpfr(out);

  return Interval(BigFloat::round(e_lo.mantissa(), e_lo.exponent() + n, prec, Round::Down),
                  BigFloat::round(e_hi.mantissa(), e_hi.exponent() + n, prec, Round::Up), prec);
}

} // namespace

Interval::Interval(BigFloat lo, BigFloat hi, long prec)
    : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec) {
  if (hi_ < lo_) throw std::invalid_argument("interval with lo > hi");
}

Interval Interval::from_rational(const Rational& q, long prec) {
  return Interval(BigFloat::from_rational(q, prec, Round::Down),
                  BigFloat::from_rational(q, prec, Round::Up), prec);
}

long working_precision(const Interval& a, const Interval& b) {
  return std::max({a.precision(), b.precision(), kMinPrecision});
}

BigFloat Interval::width() const { return BigFloat::sub(hi_, lo_, 64, Round::Up); }

BigFloat Interval::mignitude() const {
  if (contains_zero()) return BigFloat();
  return lo_.sign() > 0 ? lo_ : hi_.negate();
}

BigFloat Interval::magnitude() const { return max(lo_.abs(), hi_.abs()); }

Interval operator+(const Interval& a, const Interval& b) {
  const long p = working_precision(a, b);
  return Interval(BigFloat::add(a.lo_, b.lo_, p, Round::Down),
                  BigFloat::add(a.hi_, b.hi_, p, Round::Up), p);
}

Interval operator-(const Interval& a, const Interval& b) {
  const long p = working_precision(a, b);
  return Interval(BigFloat::sub(a.lo_, b.hi_, p, Round::Down),
                  BigFloat::sub(a.hi_, b.lo_, p, Round::Up), p);
}

Interval operator*(const Interval& a, const Interval& b) {
  const long p = working_precision(a, b);
  if (a.lo_.sign() >= 0 && b.lo_.sign() >= 0) {
    return Interval(BigFloat::mul(a.lo_, b.lo_, p, Round::Down),
                    BigFloat::mul(a.hi_, b.hi_, p, Round::Up), p);
  }
  const BigFloat* xs[2] = {&a.lo_, &a.hi_};
  const BigFloat* ys[2] = {&b.lo_, &b.hi_};
  BigFloat lo, hi;
  bool first = true;
  for (const BigFloat* x : xs) {
    for (const BigFloat* y : ys) {
      BigFloat d = BigFloat::mul(*x, *y, p, Round::Down);
      BigFloat u = BigFloat::mul(*x, *y, p, Round::Up);
      if (first || d < lo) lo = std::move(d);
      if (first || hi < u) hi = std::move(u);
      first = false;
    }
  }
  return Interval(std::move(lo), std::move(hi), p);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  const long p = working_precision(a, b);
  const BigFloat* xs[2] = {&a.lo_, &a.hi_};
  const BigFloat* ys[2] = {&b.lo_, &b.hi_};
  BigFloat lo, hi;
  bool first = true;
  for (const BigFloat* x : xs) {
    for (const BigFloat* y : ys) {
      BigFloat d = BigFloat::div(*x, *y, p, Round::Down);
      BigFloat u = BigFloat::div(*x, *y, p, Round::Up);
      if (first || d < lo) lo = std::move(d);
      if (first || hi < u) hi = std::move(u);
      first = false;
    }
  }
  return Interval(std::move(lo), std::move(hi), p);
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << "[" << x.lo_.str() << ", " << x.hi_.str() << "]";
}

Interval interval_ln2(long prec) {
  Mpfr lo(prec), hi(prec);
  mpfr_const_log2(lo.get(), MPFR_RNDD);
  mpfr_const_log2(hi.get(), MPFR_RNDU);
  return Interval(from_mpfr(lo), from_mpfr(hi), prec);
}

Interval interval_exp(const Interval& x, long prec) {
  if (prec < kMinPrecision) prec = kMinPrecision;
  if (x.is_point()) return exp_of_point(x.lo(), prec);
  return Interval(exp_of_point(x.lo(), prec).lo(), exp_of_point(x.hi(), prec).hi(), prec);
}

} // namespace nnrank
