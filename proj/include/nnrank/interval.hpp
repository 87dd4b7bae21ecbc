#pragma once

// Outward-rounded interval over BigFloat endpoints.
//
// Each interval carries the precision its results are rounded to. A precision
// of 0 marks an exact point built from an integer literal; it adopts the
// precision of whatever it is combined with (never less than kMinPrecision).

#include "nnrank/bigfloat.hpp"
#include "nnrank/rational.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <stdexcept>

namespace nnrank {

inline constexpr long kMinPrecision = 32;

/// Arguments whose magnitude needs more than this many integer bits are past
/// what exp can resolve; the enclosure degrades to [0, 2^-2^budget].
inline constexpr long kExpExponentBudgetBits = 1L << 22;

enum class Sign { Negative, Positive, Unknown };

class Interval {
public:
  Interval() = default;
  Interval(int v) : lo_(v), hi_(v) {}
  Interval(long v) : lo_(v), hi_(v) {}
  Interval(BigFloat lo, BigFloat hi, long prec);

  static Interval point(const BigFloat& x, long prec) { return Interval(x, x, prec); }
  static Interval from_rational(const Rational& q, long prec);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  long precision() const { return prec_; }
  /// Same endpoints, relabelled precision (endpoints are not re-rounded).
  Interval with_precision(long prec) const { return Interval(lo_, hi_, prec); }

  bool is_point() const { return lo_ == hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const Rational& q) const { return lo_.compare(q) <= 0 && hi_.compare(q) >= 0; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

  Sign sign_certificate() const {
    if (lo_.sign() > 0) return Sign::Positive;
    if (hi_.sign() < 0) return Sign::Negative;
    return Sign::Unknown;
  }

  /// hi - lo, rounded up.
  BigFloat width() const;
  /// Smallest |x| over the interval (0 if it straddles zero).
  BigFloat mignitude() const;
  /// Largest |x| over the interval.
  BigFloat magnitude() const;

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws std::domain_error if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a) { return Interval(a.hi_.negate(), a.lo_.negate(), a.prec_); }

  /// Endpoint and precision equality (used for serialization round-trips).
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.prec_ == b.prec_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& x);

private:
  BigFloat lo_, hi_;
  long prec_ = 0;
};

long working_precision(const Interval& a, const Interval& b);

/// Enclosure of e^x for every x in the interval, rounded to `prec` bits.
/// The exponent of the result is unbounded, so e^(-huge) keeps a positive lower end
/// as long as the argument's integer part fits kExpExponentBudgetBits.
Interval interval_exp(const Interval& x, long prec);

/// Enclosure of ln 2 at `prec` bits.
Interval interval_ln2(long prec);

} // namespace nnrank

namespace Eigen {
template <>
struct NumTraits<nnrank::Interval> : GenericNumTraits<nnrank::Interval> {
  using Real = nnrank::Interval;
  using NonInteger = nnrank::Interval;
  using Nested = nnrank::Interval;
  using Literal = nnrank::Interval;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 100,
    MulCost = 200
  };
  static inline int digits10() { return 0; }
};
} // namespace Eigen

namespace nnrank {
using IntervalMatrix = Eigen::Matrix<Interval, Eigen::Dynamic, Eigen::Dynamic>;
} // namespace nnrank
