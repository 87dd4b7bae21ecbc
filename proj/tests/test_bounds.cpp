#include "oracles.hpp"

#include "nnrank/bounds.hpp"

#include <doctest.h>

#include <random>

using namespace nnrank;

namespace {

SupportPattern pattern(long n, long m, std::initializer_list<std::pair<long, long>> zeros) {
  SupportPattern p;
  p.n_rows = n;
  p.n_cols = m;
  for (const auto& z : zeros) p.zero_positions.insert(z);
  return p;
}

SupportPattern random_pattern(std::mt19937_64& rng, long n, long m, double density) {
  SupportPattern p;
  p.n_rows = n;
  p.n_cols = m;
  std::bernoulli_distribution zero(density);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < m; ++c)
      if (zero(rng)) p.zero_positions.insert({r, c});
  return p;
}

bool is_cover(const SupportPattern& p, const std::vector<Rectangle>& rects) {
  for (const Rectangle& r : rects)
    for (long i : r.rows)
      for (long j : r.cols)
        if (p.is_zero(i, j)) return false;
  for (long i = 0; i < p.n_rows; ++i)
    for (long j = 0; j < p.n_cols; ++j) {
      if (p.is_zero(i, j)) continue;
      bool hit = false;
      for (const Rectangle& r : rects)
        hit = hit || (std::count(r.rows.begin(), r.rows.end(), i) && std::count(r.cols.begin(), r.cols.end(), j));
      if (!hit) return false;
    }
  return true;
}

} // namespace

TEST_CASE("pair-pattern bound") {
  CHECK(pair_pattern_lower_bound(1) == 1);
  CHECK(pair_pattern_lower_bound(8) == 4);
  CHECK(pair_pattern_lower_bound(9) == 4);
  for (long k = 1; k < 5000; ++k) {
    const long b = pair_pattern_lower_bound(k);
    CHECK(static_cast<double>(b) > std::log2(static_cast<double>(k)));
    CHECK(static_cast<double>(b - 1) <= std::log2(static_cast<double>(k)));
  }
  CHECK_THROWS(pair_pattern_lower_bound(0));
}

TEST_CASE("pattern extraction") {
  const auto p2 = extract_pattern(construct_surrogate(2).a);
  CHECK(p2.zero_positions == std::set<std::pair<long, long>>{{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  CHECK(p2.transpose_closed());
  const auto p1 = extract_pattern(construct_surrogate(1).a);
  CHECK(p1.zero_positions == std::set<std::pair<long, long>>{{0, 1}, {1, 0}});
  Matrix<Rational> pos(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) pos(i, j) = Rational(i + j + 1);
  CHECK(extract_pattern(pos).zero_positions.empty());
  CHECK(extract_pattern(construct_surrogate(4).a).zero_positions == SupportPattern::pair_pattern(4).zero_positions);
}

TEST_CASE("extraction refuses undecided entries and uncertified reports") {
  Matrix<Interval> a(2, 2);
  a << Interval(1), Interval(BigFloat(-1), BigFloat(1), 64), Interval(BigFloat(-1), BigFloat(1), 64), Interval(1);
  CHECK_THROWS_AS(extract_pattern(a), UnverifiedPattern);
  CertificateReport r;
  ClaimEntry c;
  c.id = "zero_pattern";
  c.verdict = Verdict::Inconclusive;
  r.claims.push_back(c);
  CHECK_THROWS_AS(extract_pattern(construct_surrogate(2), r), UnverifiedPattern);
  CHECK_THROWS_AS(rank_bracket(2, r), UnverifiedPattern);
}

TEST_CASE("rectangle cover: small known values") {
  CHECK(rectangle_cover_lower_bound(pattern(2, 2, {})).value == 1);
  const CoverResult pair2 = rectangle_cover_lower_bound(SupportPattern::pair_pattern(2));
  CHECK(pair2.value >= 2);
  CHECK(pair2.value == oracle::brute_force_cover(SupportPattern::pair_pattern(2)));
  const CoverResult diag = rectangle_cover_lower_bound(pattern(3, 3, {{0, 0}, {1, 1}, {2, 2}}));
  CHECK(diag.value == 3);
  CHECK(diag.value == oracle::brute_force_cover(pattern(3, 3, {{0, 0}, {1, 1}, {2, 2}})));
  CHECK(is_cover(pattern(3, 3, {{0, 0}, {1, 1}, {2, 2}}), diag.cover));
  CHECK(rectangle_cover_lower_bound(pattern(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})).value == 0);
}

TEST_CASE("rectangle cover equals brute force on random small patterns") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const long n = 2 + trial % 4, m = 2 + (trial / 4) % 4;
    const SupportPattern p = random_pattern(rng, n, m, 0.1 + 0.05 * (trial % 7));
    const CoverResult c = rectangle_cover_lower_bound(p);
    CHECK_FALSE(c.timed_out);
    CHECK(c.value == oracle::brute_force_cover(p));
    CHECK(is_cover(p, c.cover));
    CHECK(static_cast<long>(c.cover.size()) == c.value);
  }
}

TEST_CASE("one more zero lowers the cover number by at most one") {
  // Not monotone: [[1,1],[1,0]] needs two rectangles, [[1,0],[1,0]] needs one.
  CHECK(rectangle_cover_lower_bound(pattern(2, 2, {{1, 1}})).value == 2);
  CHECK(rectangle_cover_lower_bound(pattern(2, 2, {{1, 1}, {0, 1}})).value == 1);

  // A cover of P' plus the singleton at the new zero covers P, so cover(P') >= cover(P) - 1.
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    SupportPattern p = random_pattern(rng, 4, 4, 0.2);
    if (p.support_size() < 2) continue;
    const long before = rectangle_cover_lower_bound(p).value;
    std::uniform_int_distribution<long> pos(0, 3);
    long r, c;
    do {
      r = pos(rng);
      c = pos(rng);
    } while (p.is_zero(r, c));
    p.zero_positions.insert({r, c});
    CHECK(rectangle_cover_lower_bound(p).value >= before - 1);
  }
}

TEST_CASE("rectangle cover is at least 2 when a zero has support on both sides") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const SupportPattern p = random_pattern(rng, 4, 5, 0.25);
    bool witness = false;
    for (const auto& [r, c] : p.zero_positions) {
      bool row_support = false, col_support = false;
      for (long j = 0; j < p.n_cols; ++j) row_support = row_support || !p.is_zero(r, j);
      for (long i = 0; i < p.n_rows; ++i) col_support = col_support || !p.is_zero(i, c);
      witness = witness || (row_support && col_support);
    }
    if (witness) CHECK(rectangle_cover_lower_bound(p).value >= 2);
  }
}

TEST_CASE("fooling set never exceeds the cover number") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const SupportPattern p = random_pattern(rng, 4, 4, 0.3);
    CHECK(fooling_set_bound(p) <= rectangle_cover_lower_bound(p).value);
  }
}

TEST_CASE("k = 3 pair pattern cover") {
  const SupportPattern p = SupportPattern::pair_pattern(3);
  const CoverResult c = rectangle_cover_lower_bound(p);
  CHECK_FALSE(c.timed_out);
  CHECK(c.value >= pair_pattern_lower_bound(3));
  CHECK(is_cover(p, c.cover));
}

TEST_CASE("budget exhaustion reports a proven lower bound") {
  const SupportPattern p = SupportPattern::pair_pattern(10);
  const CoverResult c = rectangle_cover_lower_bound(p, 50);
  CHECK(c.timed_out);
  CHECK(c.value >= 1);
  CHECK(c.value <= c.best_upper);
  CHECK_THROWS_AS(rectangle_cover_lower_bound(SupportPattern::pair_pattern(11)), std::invalid_argument);
}

TEST_CASE("bracket composition") {
  const ExactBundle b = construct_surrogate(9);
  CertificateReport r;
  for (const char* id : {"zero_pattern", "rank_three"}) {
    ClaimEntry c;
    c.id = id;
    c.verdict = Verdict::Certified;
    r.claims.push_back(c);
  }
  RankBracket br = rank_bracket(9, r);
  CHECK(br.linear_rank == 3);
  CHECK(br.lower == 4);
  CHECK(br.lower_source == LowerSource::PairPattern);
  CHECK(br.upper == 18);
  CHECK(br.gap());
  br = rank_bracket(9, r, std::nullopt, NmfUpper{6, 1e-12});
  CHECK(br.upper == 6);
  CHECK(br.upper_source == UpperSource::NMFNumerical);
  CHECK_FALSE(br.inconsistent);
  CHECK(rank_bracket(9, r, std::nullopt, NmfUpper{3, 1e-12}).inconsistent);
  const RankBracket small = rank_bracket(2, r);
  CHECK(small.lower == 3);
  CHECK(small.lower_source == LowerSource::LinearRank);
  CHECK_FALSE(small.gap());
}
