#include "nnrank/determinant.hpp"

#include <stdexcept>
#include <vector>

namespace nnrank {

namespace {

constexpr Eigen::Index kMaxCofactorBlock = 6;

void require_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) throw std::invalid_argument("determinant of a non-square matrix");
}

IntervalMatrix drop(const IntervalMatrix& m, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index n = m.rows();
  IntervalMatrix out(n - 1, n - 1);
  for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
    if (i == row) continue;
    for (Eigen::Index j = 0, oj = 0; j < n; ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

} // namespace

Rational exact_determinant(const RationalMatrix& m, long max_n) {
  require_square(m.rows(), m.cols());
  const Eigen::Index n = m.rows();
  if (n > max_n) throw std::invalid_argument("exact_determinant: matrix larger than the configured limit");
  if (n == 0) return Rational(1);

  // Clear denominators row by row, then run integer Bareiss elimination.
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n)));
  mpz_class scale = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (Eigen::Index j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get().get_den_mpz_t());
    scale *= l;
    for (Eigen::Index j = 0; j < n; ++j) {
      const mpq_class& q = m(i, j).get();
      a[i][j] = q.get_num() * (l / q.get_den());
    }
  }

  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < a.size() && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == a.size()) return Rational(0);
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < a.size(); ++i) {
      for (std::size_t j = k + 1; j < a.size(); ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  mpz_class det = a.back().back();
  if (sign < 0) det = -det;
  return Rational(det, scale);
}

Interval cofactor_determinant(const IntervalMatrix& m) {
  require_square(m.rows(), m.cols());
  const Eigen::Index n = m.rows();
  if (n == 0) return Interval(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Interval acc(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    Interval term = m(0, j) * cofactor_determinant(drop(m, 0, j));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Interval interval_determinant(const IntervalMatrix& input) {
  require_square(input.rows(), input.cols());
  const Eigen::Index n = input.rows();
  IntervalMatrix a = input;
  Interval acc(1);
  bool negate = false;

  for (Eigen::Index k = 0; k < n; ++k) {
    // Full pivoting on the largest mignitude among zero-free entries.
    Eigen::Index pr = -1, pc = -1;
    BigFloat best;
    for (Eigen::Index i = k; i < n; ++i) {
      for (Eigen::Index j = k; j < n; ++j) {
        if (a(i, j).contains_zero()) continue;
        BigFloat mig = a(i, j).mignitude();
        if (pr < 0 || best < mig) {
          best = std::move(mig);
          pr = i;
          pc = j;
        }
      }
    }

    if (pr < 0) {
      const Eigen::Index m = n - k;
      const IntervalMatrix rest = a.bottomRightCorner(m, m);
      Interval tail;
      if (m <= kMaxCofactorBlock) {
        tail = cofactor_determinant(rest);
      } else {
        // |det| <= prod of row 1-norms.
        Interval bound(1);
        for (Eigen::Index i = 0; i < m; ++i) {
          Interval row(0);
          for (Eigen::Index j = 0; j < m; ++j) {
            const BigFloat mag = rest(i, j).magnitude();
            row = row + Interval(mag, mag, rest(i, j).precision());
          }
          bound = bound * row;
        }
        tail = Interval(bound.hi().negate(), bound.hi(), bound.precision());
      }
      acc = acc * tail;
      return negate ? -acc : acc;
    }

    if (pr != k) {
      a.row(pr).swap(a.row(k));
      negate = !negate;
    }
    if (pc != k) {
      a.col(pc).swap(a.col(k));
      negate = !negate;
    }
    const Interval pivot = a(k, k);
    acc = acc * pivot;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k).is_point() && a(i, k).lo().is_zero()) continue;
      const Interval f = a(i, k) / pivot;
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
    }
  }
  return negate ? -acc : acc;
}

} // namespace nnrank
