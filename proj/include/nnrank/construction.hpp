#pragma once

// The construction: Lambda, the h-chain, B (2k x 3) and A = B Lambda B^T.
//
// Matrices are Eigen dense matrices templated on the scalar, so the same
// entry formulas evaluate on exact rationals, on outward-rounded intervals,
// and on symbolic rational functions of h.

#include "nnrank/interval.hpp"
#include "nnrank/rational.hpp"

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnrank {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Row3 = std::array<Scalar, 3>;

enum class ScalarKind { PaperInterval, SurrogateExact };

struct ModeInfo {
  ScalarKind kind = ScalarKind::SurrogateExact;
  long k = 0;
  Rational h1;                 // exp chain start
  std::string surrogate_spec;  // surrogate chain description
  long precision_bits = 0;     // interval mode only
};

std::string to_string(ScalarKind kind);
ScalarKind scalar_kind_from_string(const std::string& s);

/// Raised when an interval in the exp chain is too wide to certify
/// positivity or strict decrease. `index` is 1-based.
class PrecisionExhausted : public std::runtime_error {
public:
  PrecisionExhausted(long index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  long index() const { return index_; }

private:
  long index_;
};

template <class Scalar>
struct HChain {
  ModeInfo mode;
  std::vector<Scalar> values;
  std::string origin;
};

/// [[1,1,1],[1,1,-1],[1,-1,1]]
template <class Scalar = Rational>
Matrix<Scalar> build_lambda() {
  Matrix<Scalar> l(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s) l(r, s) = Scalar(((r == 1 && s == 2) || (r == 2 && s == 1)) ? -1 : 1);
  return l;
}

/// (1, 4 + h - h/(7 + h^2), 6 + h)
template <class Scalar>
Row3<Scalar> b_row_odd(const Scalar& h) {
  return {Scalar(1), Scalar(4) + h - h / (Scalar(7) + h * h), Scalar(6) + h};
}

/// (1, 14 + h, (21 + 8h + 4h^2 - h^3) / (21 + h + 3h^2))
template <class Scalar>
Row3<Scalar> b_row_even(const Scalar& h) {
  const Scalar h2 = h * h;
  const Scalar h3 = h2 * h;
  return {Scalar(1), Scalar(14) + h,
          (Scalar(21) + Scalar(8) * h + Scalar(4) * h2 - h3) / (Scalar(21) + h + Scalar(3) * h2)};
}

/// Lambda * r, expanded: (r1 + r2 + r3, r1 + r2 - r3, r1 - r2 + r3).
template <class Scalar>
Row3<Scalar> apply_lambda(const Row3<Scalar>& r) {
  return {r[0] + r[1] + r[2], r[0] + r[1] - r[2], r[0] - r[1] + r[2]};
}

/// s . (Lambda r) = s1 (r1+r2+r3) + s2 (r1+r2-r3) + s3 (r1-r2+r3).
template <class Scalar>
Scalar lambda_form(const Row3<Scalar>& s, const Row3<Scalar>& r) {
  const Row3<Scalar> lr = apply_lambda(r);
  return s[0] * lr[0] + s[1] * lr[1] + s[2] * lr[2];
}

/// Rows 2i-1 / 2i (1-based) are the odd / even formulas at h_i.
template <class Scalar>
Matrix<Scalar> build_b(const std::vector<Scalar>& h) {
  const auto k = static_cast<Eigen::Index>(h.size());
  Matrix<Scalar> b(2 * k, 3);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Row3<Scalar> odd = b_row_odd(h[static_cast<std::size_t>(i)]);
    const Row3<Scalar> even = b_row_even(h[static_cast<std::size_t>(i)]);
    for (int c = 0; c < 3; ++c) {
      b(2 * i, c) = odd[static_cast<std::size_t>(c)];
      b(2 * i + 1, c) = even[static_cast<std::size_t>(c)];
    }
  }
  return b;
}

template <class Scalar>
Row3<Scalar> row_of(const Matrix<Scalar>& m, Eigen::Index r) {
  return {m(r, 0), m(r, 1), m(r, 2)};
}

/// A_pq = (row p of B) Lambda (row q of B)^T, evaluated once per unordered pair
/// and mirrored.
template <class Scalar>
Matrix<Scalar> build_a(const Matrix<Scalar>& b, const Matrix<Scalar>& lambda) {
  if (b.cols() != 3 || lambda.rows() != 3 || lambda.cols() != 3)
    throw std::invalid_argument("build_a: expected B with 3 columns and a 3x3 Lambda");
  const Eigen::Index n = b.rows();
  Matrix<Scalar> lb(n, 3);
  for (Eigen::Index q = 0; q < n; ++q)
    for (int r = 0; r < 3; ++r) {
      Scalar acc = lambda(r, 0) * b(q, 0);
      acc = acc + lambda(r, 1) * b(q, 1);
      acc = acc + lambda(r, 2) * b(q, 2);
      lb(q, r) = acc;
    }
  Matrix<Scalar> a(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p; q < n; ++q) {
      Scalar acc = b(p, 0) * lb(q, 0);
      acc = acc + b(p, 1) * lb(q, 1);
      acc = acc + b(p, 2) * lb(q, 2);
      a(p, q) = acc;
      if (q != p) a(q, p) = a(p, q);
    }
  return a;
}

/// Surrogate chain description: "default" (h_i = 10^(-2^i)) or
/// "list:q1,q2,..." with rational entries.
struct SurrogateSpec {
  std::string text = "default";
  static SurrogateSpec parse(const std::string& s);
  /// First k values; throws std::invalid_argument when the list is too short.
  std::vector<Rational> values(long k) const;
};

/// h_1 = enclosure of h1, h_{i+1} = exp(-1/h_i). Requires k >= 1, 0 < h1 < 1.
HChain<Interval> hchain_paper(long k, const Rational& h1, long precision_bits);
/// Exact chain; throws std::invalid_argument unless strictly decreasing and positive.
HChain<Rational> hchain_surrogate(long k, const SurrogateSpec& spec);

template <class Scalar>
struct ConstructionBundle {
  ModeInfo mode;
  std::vector<Scalar> h;  // chain values B was built from
  Matrix<Scalar> lambda, b, a;
};

using ExactBundle = ConstructionBundle<Rational>;
using IntervalBundle = ConstructionBundle<Interval>;

ExactBundle construct_surrogate(long k, const SurrogateSpec& spec = {});
ExactBundle construct_from_chain(const HChain<Rational>& chain);
/// Within-pair entries of A are set to exact zero, which the symbolic pair
/// identity justifies; throws std::logic_error if a computed enclosure for such
/// an entry excludes zero.
IntervalBundle construct_paper(long k, const Rational& h1, long precision_bits);

/// A_pq for a row of parity `odd_row` at x and one of parity `odd_col` at y,
/// written N(x, y) / (D_row(x) D_col(y)) with N expanded over the rationals, so
/// terms that cancel identically are gone before any rounding happens.
struct EntryExpansion {
  std::vector<std::vector<Rational>> num;  // num[i][j] multiplies x^i y^j
  std::vector<Rational> den_x, den_y;      // ascending coefficients
};

EntryExpansion entry_expansion(bool odd_row, bool odd_col);

/// A from the chain via entry_expansion. Stays sharp when h_p and h_q differ by
/// many orders of magnitude, where B Lambda B^T loses everything to cancellation.
Matrix<Interval> build_a_expanded(const std::vector<Interval>& h, long precision_bits);

/// Sets A_{2i-1,2i} = A_{2i,2i-1} = 0 exactly (interval mode).
void apply_pair_identity(Matrix<Interval>& a);

} // namespace nnrank
