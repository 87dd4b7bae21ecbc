#pragma once

// Random exact and interval matrices for serialization round trips.

#include "nnrank/io.hpp"

#include <random>

namespace gen {

using nnrank::BigFloat;
using nnrank::Interval;
using nnrank::Matrix;
using nnrank::Rational;

inline mpz_class random_mpz(std::mt19937_64& rng, int max_bits) {
  const int bits = std::uniform_int_distribution<int>(0, max_bits)(rng);
  mpz_class z = 0;
  for (int done = 0; done < bits; done += 64) {
    const int take = std::min(64, bits - done);
    const std::uint64_t word = take == 64 ? rng() : rng() & ((1ULL << take) - 1);
    z <<= take;
    z += mpz_class(std::to_string(word));
  }
  return (rng() & 1) ? mpz_class(-z) : z;
}

inline Rational random_rational(std::mt19937_64& rng) {
  mpz_class den = abs(random_mpz(rng, 200)) + 1;
  return Rational(random_mpz(rng, 200), den);
}

inline BigFloat random_bigfloat(std::mt19937_64& rng) {
  mpz_class exp = random_mpz(rng, 90);
  return BigFloat(random_mpz(rng, 300), exp);
}

inline Matrix<Rational> random_rational_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dim(1, 7);
  Matrix<Rational> m(dim(rng), dim(rng));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = random_rational(rng);
  return m;
}

inline Matrix<Interval> random_interval_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dim(1, 7), prec(53, 1 << 16);
  const long p = prec(rng);
  Matrix<Interval> m(dim(rng), dim(rng));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      BigFloat a = random_bigfloat(rng), b = (rng() % 4 == 0) ? a : random_bigfloat(rng);
      if (b < a) std::swap(a, b);
      m(r, c) = Interval(a, b, p);
    }
  return m;
}

inline nnrank::ModeInfo random_mode(std::mt19937_64& rng, bool interval, long precision) {
  nnrank::ModeInfo mode;
  mode.k = std::uniform_int_distribution<long>(1, 50)(rng);
  if (interval) {
    mode.kind = nnrank::ScalarKind::PaperInterval;
    mode.h1 = Rational(mpz_class(1), mpz_class(std::uniform_int_distribution<long>(2, 1000)(rng)));
    mode.precision_bits = precision;
  } else {
    mode.surrogate_spec = "default";
  }
  return mode;
}

template <class Scalar>
bool same_entries(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if constexpr (std::is_same_v<Scalar, Interval>) {
        if (!(a(r, c).lo() == b(r, c).lo()) || !(a(r, c).hi() == b(r, c).hi()) ||
            a(r, c).precision() != b(r, c).precision())
          return false;
      } else if (!(a(r, c) == b(r, c))) {
        return false;
      }
    }
  return true;
}

// Serialize, reparse from text, deserialize, reserialize: the value and the
// bytes must both survive.
inline bool round_trip(const Matrix<Rational>& m, const nnrank::ModeInfo& mode) {
  const auto j = nnrank::matrix_to_json(m, mode);
  const std::string bytes = nnrank::canonical_bytes(j);
  const auto back = nnrank::rational_matrix_from_json(nlohmann::json::parse(bytes));
  return same_entries(m, back) && nnrank::canonical_bytes(nnrank::matrix_to_json(back, mode)) == bytes;
}

inline bool round_trip(const Matrix<Interval>& m, const nnrank::ModeInfo& mode) {
  const auto j = nnrank::matrix_to_json(m, mode);
  const std::string bytes = nnrank::canonical_bytes(j);
  const auto back = nnrank::interval_matrix_from_json(nlohmann::json::parse(bytes));
  return same_entries(m, back) && nnrank::canonical_bytes(nnrank::matrix_to_json(back, mode)) == bytes;
}

} // namespace gen
