#include "nnrank/bounds.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <unordered_set>

namespace nnrank {

namespace {

using Bits = std::bitset<kMaxCoverCells>;

struct CoverProblem {
  explicit CoverProblem(const SupportPattern& pattern) : p(pattern) {}

  const SupportPattern& p;
  std::vector<Rectangle> rects;
  std::vector<Bits> masks;
  std::vector<std::vector<int>> covering;  // cell -> rectangles containing it
  long budget = 0;
  long nodes = 0;
  bool timed_out = false;
  long best = 0;
  std::vector<int> best_choice;
  std::vector<int> choice;

  long cell(long r, long c) const { return r * p.n_cols + c; }

  // Greedy fooling set inside `cells`.
  long fooling(const Bits& cells) const {
    std::vector<std::pair<long, long>> chosen;
    for (long r = 0; r < p.n_rows; ++r)
      for (long c = 0; c < p.n_cols; ++c) {
        if (!cells.test(static_cast<std::size_t>(cell(r, c)))) continue;
        const bool ok = std::all_of(chosen.begin(), chosen.end(), [&](const auto& rc) {
          return p.is_zero(rc.first, c) || p.is_zero(r, rc.second);
        });
        if (ok) chosen.emplace_back(r, c);
      }
    return static_cast<long>(chosen.size());
  }

  void search(const Bits& uncovered) {
    if (timed_out) return;
    if (++nodes > budget) {
      timed_out = true;
      return;
    }
    const long depth = static_cast<long>(choice.size());
    if (uncovered.none()) {
      if (depth < best) {
        best = depth;
        best_choice = choice;
      }
      return;
    }
    if (depth + fooling(uncovered) >= best) return;

    // Branch on the uncovered cell with the fewest covering rectangles.
    long pick = -1;
    std::size_t fewest = SIZE_MAX;
    for (long i = 0; i < p.n_rows * p.n_cols; ++i) {
      if (!uncovered.test(static_cast<std::size_t>(i))) continue;
      if (covering[static_cast<std::size_t>(i)].size() < fewest) {
        fewest = covering[static_cast<std::size_t>(i)].size();
        pick = i;
      }
    }
    std::vector<std::pair<std::size_t, int>> order;
    for (int r : covering[static_cast<std::size_t>(pick)])
      order.emplace_back((masks[static_cast<std::size_t>(r)] & uncovered).count(), r);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [gain, r] : order) {
      choice.push_back(r);
      search(uncovered & ~masks[static_cast<std::size_t>(r)]);
      choice.pop_back();
      if (timed_out) return;
    }
  }
};

Bits support_cells(const SupportPattern& p) {
  Bits b;
  for (long r = 0; r < p.n_rows; ++r)
    for (long c = 0; c < p.n_cols; ++c)
      if (!p.is_zero(r, c)) b.set(static_cast<std::size_t>(r * p.n_cols + c));
  return b;
}

template <class Scalar, class IsZero, class Undecided>
SupportPattern extract(const Matrix<Scalar>& a, IsZero is_zero, Undecided undecided) {
  SupportPattern p;
  p.n_rows = a.rows();
  p.n_cols = a.cols();
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (is_zero(a(r, c))) p.zero_positions.insert({r, c});
      else if (undecided(a(r, c)))
        throw UnverifiedPattern("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                ") is neither certified zero nor certified positive");
    }
  return p;
}

} // namespace

bool SupportPattern::transpose_closed() const {
  return std::all_of(zero_positions.begin(), zero_positions.end(),
                     [&](const auto& rc) { return is_zero(rc.second, rc.first); });
}

SupportPattern SupportPattern::pair_pattern(long k) {
  SupportPattern p;
  p.n_rows = p.n_cols = 2 * k;
  for (long i = 0; i < k; ++i) {
    p.zero_positions.insert({2 * i, 2 * i + 1});
    p.zero_positions.insert({2 * i + 1, 2 * i});
  }
  return p;
}

SupportPattern extract_pattern(const Matrix<Rational>& a) {
  return extract(
      a, [](const Rational& x) { return x.is_zero(); },
      [](const Rational& x) {
        if (x.sign() < 0) throw std::invalid_argument("extract_pattern: negative entry");
        return false;
      });
}

SupportPattern extract_pattern(const Matrix<Interval>& a) {
  return extract(
      a, [](const Interval& x) { return x.is_point() && x.lo().is_zero(); },
      [](const Interval& x) {
        if (x.sign_certificate() == Sign::Negative) throw std::invalid_argument("extract_pattern: negative entry");
        return x.sign_certificate() == Sign::Unknown;
      });
}

long pair_pattern_lower_bound(long k) {
  if (k < 1) throw std::invalid_argument("pair_pattern_lower_bound: k must be >= 1");
  return static_cast<long>(std::bit_width(static_cast<unsigned long>(k)));
}

bool maximal_rectangles(const SupportPattern& p, std::vector<Rectangle>& out, long limit) {
  out.clear();
  if (p.n_cols > kMaxCoverCells) throw std::invalid_argument("maximal_rectangles: too many columns");
  std::vector<Bits> row_support(static_cast<std::size_t>(p.n_rows));
  for (long r = 0; r < p.n_rows; ++r)
    for (long c = 0; c < p.n_cols; ++c)
      if (!p.is_zero(r, c)) row_support[static_cast<std::size_t>(r)].set(static_cast<std::size_t>(c));

  // Column sets of maximal rectangles are exactly the nonempty intersections of row supports.
  std::unordered_set<Bits> seen;
  std::deque<Bits> queue;
  for (const Bits& s : row_support)
    if (s.any() && seen.insert(s).second) queue.push_back(s);
  while (!queue.empty()) {
    const Bits s = queue.front();
    queue.pop_front();
    for (const Bits& r : row_support) {
      const Bits t = s & r;
      if (t.any() && seen.insert(t).second) {
        if (static_cast<long>(seen.size()) > limit) return false;
        queue.push_back(t);
      }
    }
  }

  for (const Bits& cols : seen) {
    Rectangle rect;
    for (long r = 0; r < p.n_rows; ++r)
      if ((cols & ~row_support[static_cast<std::size_t>(r)]).none()) rect.rows.push_back(r);
    for (long c = 0; c < p.n_cols; ++c)
      if (cols.test(static_cast<std::size_t>(c))) rect.cols.push_back(c);
    out.push_back(std::move(rect));
  }
  std::sort(out.begin(), out.end(), [](const Rectangle& a, const Rectangle& b) {
    return std::tie(a.rows, a.cols) < std::tie(b.rows, b.cols);
  });
  return true;
}

long fooling_set_bound(const SupportPattern& p) {
  if (p.n_rows * p.n_cols > kMaxCoverCells) throw std::invalid_argument("fooling_set_bound: pattern too large");
  CoverProblem prob(p);
  return prob.fooling(support_cells(p));
}

CoverResult rectangle_cover_lower_bound(const SupportPattern& p, long node_budget) {
  if (p.n_rows * p.n_cols > kMaxCoverCells)
    throw std::invalid_argument("rectangle cover needs n_rows * n_cols <= " + std::to_string(kMaxCoverCells) +
                                "; use pair_pattern_lower_bound for larger pair patterns");
  CoverResult result;
  const Bits all = support_cells(p);
  if (all.none()) return result;

  CoverProblem prob(p);
  prob.budget = node_budget;
  const long root_lb = prob.fooling(all);

  if (!maximal_rectangles(p, prob.rects, node_budget)) {
    long rows_with_support = 0;
    for (long r = 0; r < p.n_rows; ++r)
      for (long c = 0; c < p.n_cols; ++c)
        if (!p.is_zero(r, c)) {
          ++rows_with_support;
          break;
        }
    result.value = root_lb;
    result.timed_out = root_lb < rows_with_support;
    result.best_upper = rows_with_support;
    result.maximal_rectangles = -1;
    return result;
  }
  result.maximal_rectangles = static_cast<long>(prob.rects.size());

  prob.covering.resize(static_cast<std::size_t>(p.n_rows * p.n_cols));
  for (std::size_t i = 0; i < prob.rects.size(); ++i) {
    Bits m;
    for (long r : prob.rects[i].rows)
      for (long c : prob.rects[i].cols) {
        m.set(static_cast<std::size_t>(prob.cell(r, c)));
        prob.covering[static_cast<std::size_t>(prob.cell(r, c))].push_back(static_cast<int>(i));
      }
    prob.masks.push_back(m);
  }

  // Greedy incumbent.
  Bits left = all;
  while (left.any()) {
    int pick = 0;
    std::size_t gain = 0;
    for (std::size_t i = 0; i < prob.masks.size(); ++i) {
      const std::size_t g = (prob.masks[i] & left).count();
      if (g > gain) {
        gain = g;
        pick = static_cast<int>(i);
      }
    }
    prob.best_choice.push_back(pick);
    left &= ~prob.masks[static_cast<std::size_t>(pick)];
  }
  prob.best = static_cast<long>(prob.best_choice.size());

  if (prob.best > root_lb) prob.search(all);

  result.nodes = prob.nodes;
  result.best_upper = prob.best;
  for (int i : prob.best_choice) result.cover.push_back(prob.rects[static_cast<std::size_t>(i)]);
  if (prob.timed_out && prob.best > root_lb) {
    result.timed_out = true;
    result.value = root_lb;
  } else {
    result.value = prob.best;
  }
  return result;
}

std::string to_string(LowerSource s) {
  switch (s) {
    case LowerSource::LinearRank: return "LinearRank";
    case LowerSource::PairPattern: return "PairPattern";
    case LowerSource::RectangleCover: return "RectangleCover";
  }
  return "LinearRank";
}

std::string to_string(UpperSource s) {
  return s == UpperSource::Dimension ? "Dimension" : "NMFNumerical";
}

LowerSource lower_source_from_string(const std::string& s) {
  if (s == "LinearRank") return LowerSource::LinearRank;
  if (s == "PairPattern") return LowerSource::PairPattern;
  if (s == "RectangleCover") return LowerSource::RectangleCover;
  throw std::invalid_argument("unknown lower-bound source: " + s);
}

UpperSource upper_source_from_string(const std::string& s) {
  if (s == "Dimension") return UpperSource::Dimension;
  if (s == "NMFNumerical") return UpperSource::NMFNumerical;
  throw std::invalid_argument("unknown upper-bound source: " + s);
}

RankBracket rank_bracket(long k, const CertificateReport& report, const std::optional<CoverResult>& cover,
                         const std::optional<NmfUpper>& nmf) {
  const ClaimEntry* zp = report.find("zero_pattern");
  if (!zp || zp->verdict != Verdict::Certified)
    throw UnverifiedPattern("zero pattern is not certified; refusing to bound the nonnegative rank");
  if (k < 1) throw std::invalid_argument("rank_bracket: k must be >= 1");

  RankBracket b;
  const ClaimEntry* rank = report.find("rank_three");
  b.linear_rank = (rank && rank->verdict == Verdict::Certified) ? 3 : 0;
  b.lower = std::max(1L, b.linear_rank);
  b.lower_source = LowerSource::LinearRank;

  b.pair_bound = pair_pattern_lower_bound(k);
  if (*b.pair_bound > b.lower) {
    b.lower = *b.pair_bound;
    b.lower_source = LowerSource::PairPattern;
  }
  if (cover) {
    b.cover = cover;
    if (cover->value > b.lower) {
      b.lower = cover->value;
      b.lower_source = LowerSource::RectangleCover;
    }
  }

  b.upper = 2 * k;
  b.upper_source = UpperSource::Dimension;
  if (nmf && nmf->rank < b.upper) {
    b.upper = nmf->rank;
    b.upper_source = UpperSource::NMFNumerical;
    b.nmf_residual = nmf->residual;
  }
  b.inconsistent = b.upper < b.lower;
  return b;
}

} // namespace nnrank
