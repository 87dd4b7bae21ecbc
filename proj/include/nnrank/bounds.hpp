#pragma once

// Lower bounds on the nonnegative rank from the zero pattern of A, and the
// bracket rank_+ in [lower, upper].

#include "nnrank/construction.hpp"
#include "nnrank/verify.hpp"

#include <bitset>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nnrank {

/// Patterns handled by the exact cover search: n_rows * n_cols <= this.
constexpr long kMaxCoverCells = 400;

/// Thrown when a bound is requested for a matrix whose zero pattern is not certified.
class UnverifiedPattern : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// 0-based positions; the support is the complement of zero_positions.
struct SupportPattern {
  long n_rows = 0, n_cols = 0;
  std::set<std::pair<long, long>> zero_positions;

  bool is_zero(long r, long c) const { return zero_positions.count({r, c}) != 0; }
  bool transpose_closed() const;
  long support_size() const { return n_rows * n_cols - static_cast<long>(zero_positions.size()); }

  /// Pair-zero pattern of a 2k x 2k matrix: zeros at (2i, 2i+1) and (2i+1, 2i).
  static SupportPattern pair_pattern(long k);
};

struct Rectangle {
  std::vector<long> rows, cols;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// Exact zeros of A; any entry whose sign is undecided is refused.
SupportPattern extract_pattern(const Matrix<Rational>& a);
SupportPattern extract_pattern(const Matrix<Interval>& a);

/// Same, gated on a Certified zero_pattern claim in the report.
template <class Scalar>
SupportPattern extract_pattern(const ConstructionBundle<Scalar>& bundle, const CertificateReport& report) {
  const ClaimEntry* claim = report.find("zero_pattern");
  if (!claim || claim->verdict != Verdict::Certified)
    throw UnverifiedPattern("zero pattern is not certified; refusing to bound the nonnegative rank");
  return extract_pattern(bundle.a);
}

/// floor(log2 k) + 1.
long pair_pattern_lower_bound(long k);

/// Inclusion-maximal zero-avoiding rectangles, in a deterministic order.
/// Stops early (returns false) once more than `limit` are found.
bool maximal_rectangles(const SupportPattern& p, std::vector<Rectangle>& out, long limit = 1L << 22);

/// Size of a greedy fooling set: support cells no two of which fit in one rectangle.
long fooling_set_bound(const SupportPattern& p);

struct CoverResult {
  long value = 0;          // exact cover number, or the best proven lower bound if timed_out
  bool timed_out = false;
  long best_upper = 0;     // smallest cover found
  long nodes = 0;
  long maximal_rectangles = 0;
  std::vector<Rectangle> cover;  // a cover of size best_upper
};

/// Minimum number of zero-avoiding rectangles covering the support.
/// Throws std::invalid_argument above kMaxCoverCells.
CoverResult rectangle_cover_lower_bound(const SupportPattern& p, long node_budget = 5'000'000);

enum class LowerSource { LinearRank, PairPattern, RectangleCover };
enum class UpperSource { Dimension, NMFNumerical };

std::string to_string(LowerSource s);
std::string to_string(UpperSource s);
LowerSource lower_source_from_string(const std::string& s);
UpperSource upper_source_from_string(const std::string& s);

struct RankBracket {
  long linear_rank = 0;  // certified rank, 0 if not certified
  long lower = 1;
  LowerSource lower_source = LowerSource::LinearRank;
  long upper = 1;
  UpperSource upper_source = UpperSource::Dimension;
  std::optional<double> nmf_residual;
  std::optional<long> pair_bound;
  std::optional<CoverResult> cover;
  /// A numerical upper bound fell below the certified lower bound.
  bool inconsistent = false;

  bool gap() const { return linear_rank > 0 && lower > linear_rank; }
};

struct NmfUpper {
  long rank = 0;
  double residual = 0.0;
};

/// Requires a Certified zero pattern in the report.
RankBracket rank_bracket(long k, const CertificateReport& report, const std::optional<CoverResult>& cover = {},
                         const std::optional<NmfUpper>& nmf = {});

} // namespace nnrank
