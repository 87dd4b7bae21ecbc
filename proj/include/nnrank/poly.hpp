#pragma once

// Univariate polynomials and rational functions over the rationals.

#include "nnrank/rational.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nnrank {

/// Dense polynomial, coefficients in ascending degree. No trailing zeros; the
/// zero polynomial has no coefficients.
class UniPoly {
public:
  UniPoly() = default;
  UniPoly(int c) : UniPoly(Rational(c)) {}
  UniPoly(const Rational& c);
  explicit UniPoly(std::vector<Rational> coeffs);

  static UniPoly x();
  /// c * x^n
  static UniPoly monomial(const Rational& c, int n);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lead() const;
  Rational coeff(int i) const;

  Rational eval(const Rational& at) const;
  /// Sign of the polynomial as x -> +inf (`positive` true) or x -> -inf.
  int sign_at_infinity(bool positive) const;

  UniPoly derivative() const;
  UniPoly monic() const;
  /// p(-x)
  UniPoly reflect() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator-(const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

  std::string str(const std::string& var = "x") const;
  friend std::ostream& operator<<(std::ostream& os, const UniPoly& p);

private:
  void trim();
  std::vector<Rational> c_;
};

/// Euclidean division; throws std::domain_error for a zero divisor.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero only if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'), monic.
UniPoly square_free_part(const UniPoly& p);
/// Yun's algorithm: factors f_1, f_2, ... with p = c * prod f_i^i, each f_i
/// square-free and pairwise coprime. Entry i-1 holds f_i (possibly constant 1).
std::vector<UniPoly> square_free_decomposition(const UniPoly& p);

/// num/den with gcd(num, den) = 1 and den monic.
class RatFunc {
public:
  RatFunc() : den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(const UniPoly& p) : num_(p), den_(1) {}
  /// Throws std::domain_error if den is the zero polynomial.
  RatFunc(UniPoly num, UniPoly den);

  static RatFunc x() { return RatFunc(UniPoly::x()); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// Throws std::domain_error at a pole.
  Rational eval(const Rational& at) const;

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

  std::string str(const std::string& var = "h") const;
  friend std::ostream& operator<<(std::ostream& os, const RatFunc& f);

private:
  UniPoly num_, den_;
};

/// Cancels the common factor and makes the denominator monic.
RatFunc normalize(const RatFunc& f);
inline bool ratfunc_is_zero(const RatFunc& f) { return normalize(f).is_zero(); }

} // namespace nnrank
