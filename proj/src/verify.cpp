#include "nnrank/verify.hpp"

#include "nnrank/determinant.hpp"
#include "nnrank/sturm.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

namespace nnrank {

namespace {

using json = nlohmann::json;

enum class Cert { Positive, Negative, Zero, Unknown };

Cert certify_sign(const Rational& x) {
  const int s = x.sign();
  return s > 0 ? Cert::Positive : (s < 0 ? Cert::Negative : Cert::Zero);
}

Cert certify_sign(const Interval& x) {
  switch (x.sign_certificate()) {
    case Sign::Positive: return Cert::Positive;
    case Sign::Negative: return Cert::Negative;
    case Sign::Unknown: break;
  }
  return (x.is_point() && x.lo().is_zero()) ? Cert::Zero : Cert::Unknown;
}

json describe(const Rational& x) { return x.str(); }

json describe(const Interval& x) {
  return {{"lo", x.lo().str()}, {"hi", x.hi().str()}, {"log2_width", x.width().log2_abs()}};
}

long precision_of(const Rational&) { return 0; }
long precision_of(const Interval& x) { return x.precision(); }

template <class Scalar>
long matrix_precision(const Matrix<Scalar>& m) {
  long p = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) p = std::max(p, precision_of(m(i, j)));
  return p;
}

Rational det3(const Matrix<Rational>& m) { return exact_determinant(m); }
Interval det3(const Matrix<Interval>& m) { return interval_determinant(m); }

template <class Scalar>
constexpr bool is_exact = std::is_same_v<Scalar, Rational>;

bool is_pair(Eigen::Index p, Eigen::Index q) { return p != q && p / 2 == q / 2; }

json one_based(Eigen::Index p, Eigen::Index q) { return json::array({p + 1, q + 1}); }

template <class Scalar>
Matrix<Scalar> rows_of(const Matrix<Scalar>& m, const std::array<Eigen::Index, 3>& rows) {
  Matrix<Scalar> out(3, m.cols());
  for (int i = 0; i < 3; ++i) out.row(i) = m.row(rows[static_cast<std::size_t>(i)]);
  return out;
}

template <class Scalar>
Matrix<Scalar> principal(const Matrix<Scalar>& m, const std::array<Eigen::Index, 3>& idx) {
  Matrix<Scalar> out(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return out;
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ClaimEntry from_symbolic(const SymbolicCertificate& cert, double seconds) {
  ClaimEntry e;
  e.id = cert.claim_id;
  e.verdict = cert.proved() ? Verdict::Certified : Verdict::Falsified;
  e.witness = cert.witness();
  e.wall_seconds = seconds;
  return e;
}

std::vector<std::array<Eigen::Index, 3>> all_triples(Eigen::Index n) {
  std::vector<std::array<Eigen::Index, 3>> out;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      for (Eigen::Index c = b + 1; c < n; ++c) out.push_back({a, b, c});
  return out;
}

} // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Falsified: return "falsified";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "certified") return Verdict::Certified;
  if (s == "falsified") return Verdict::Falsified;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw std::invalid_argument("unknown verdict: " + s);
}

const ClaimEntry* CertificateReport::find(const std::string& id) const {
  for (const auto& c : claims)
    if (c.id == id) return &c;
  return nullptr;
}

Verdict aggregate(const std::vector<ClaimEntry>& claims) {
  bool inconclusive = false;
  for (const auto& c : claims) {
    if (c.verdict == Verdict::Falsified) return Verdict::Falsified;
    if (c.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Certified;
}

std::vector<std::array<Eigen::Index, 3>> minor_triples(Eigen::Index n, bool exhaustive, const VerifyOptions& options) {
  auto all = all_triples(n);
  if (exhaustive || n <= options.exhaustive_dimension ||
      static_cast<long>(all.size()) <= options.minor_sample_size) {
    return all;
  }
  // Deterministic sample: seeded shuffle, first minor_sample_size, sorted.
  std::mt19937_64 rng(options.seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(options.minor_sample_size));
  std::sort(all.begin(), all.end());
  return all;
}

template <class Scalar>
ClaimEntry verify_symmetry(const Matrix<Scalar>& a) {
  Stopwatch sw;
  ClaimEntry e{"symmetry", Verdict::Certified, json::object(), matrix_precision(a), 0.0};
  e.witness["check"] = is_exact<Scalar> ? "exact equality" : "structural (shared entries)";
  if (a.rows() != a.cols()) {
    e.verdict = Verdict::Falsified;
    e.witness["reason"] = "non-square";
  }
  for (Eigen::Index p = 0; p < a.rows() && e.verdict == Verdict::Certified; ++p)
    for (Eigen::Index q = p + 1; q < a.cols(); ++q)
      if (!(a(p, q) == a(q, p))) {
        e.verdict = Verdict::Falsified;
        e.witness["position"] = one_based(p, q);
        e.witness["a_pq"] = describe(a(p, q));
        e.witness["a_qp"] = describe(a(q, p));
        break;
      }
  e.wall_seconds = sw.seconds();
  return e;
}

template <class Scalar>
ClaimEntry verify_zero_pattern(const Matrix<Scalar>& a, const SymbolicCertificate& pair_identity) {
  Stopwatch sw;
  ClaimEntry e{"zero_pattern", Verdict::Certified, json::object(), matrix_precision(a), 0.0};
  json zeros = json::array(), falsified = json::array(), unknown = json::array();
  long positive = 0, positive_offdiag = 0, unknown_count = 0;

  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = 0; q < a.cols(); ++q) {
      const Cert c = certify_sign(a(p, q));
      if (is_pair(p, q)) {
        if (c == Cert::Zero) {
          if (!is_exact<Scalar> && !pair_identity.proved()) {
            ++unknown_count;
            if (unknown.size() < 10) unknown.push_back(one_based(p, q));
            continue;
          }
          zeros.push_back(one_based(p, q));
        } else if (c == Cert::Unknown && pair_identity.proved()) {
          zeros.push_back(one_based(p, q));
        } else if (c == Cert::Unknown) {
          ++unknown_count;
          if (unknown.size() < 10) unknown.push_back(one_based(p, q));
        } else if (falsified.size() < 10) {
          falsified.push_back({{"position", one_based(p, q)}, {"expected", "zero"}, {"value", describe(a(p, q))}});
        } else {
          falsified.push_back(json());
        }
        continue;
      }
      if (c == Cert::Positive) {
        ++positive;
        if (p != q) ++positive_offdiag;
      } else if (c == Cert::Unknown) {
        ++unknown_count;
        if (unknown.size() < 10) unknown.push_back(one_based(p, q));
      } else {
        falsified.push_back({{"position", one_based(p, q)}, {"expected", "positive"}, {"value", describe(a(p, q))}});
      }
    }
  }

  e.witness["zero_set"] = zeros;
  e.witness["positive_entries"] = positive;
  e.witness["positive_offdiagonal_entries"] = positive_offdiag;
  if (!is_exact<Scalar>) e.witness["pair_zero_justification"] = pair_identity.claim_id;
  if (!falsified.empty()) {
    e.verdict = Verdict::Falsified;
    e.witness["violations"] = falsified;
  } else if (unknown_count > 0) {
    e.verdict = Verdict::Inconclusive;
    e.witness["undecided_count"] = unknown_count;
    e.witness["undecided"] = unknown;
    e.witness["suggestion"] = "retry at doubled precision";
  }
  e.wall_seconds = sw.seconds();
  return e;
}

template <class Scalar>
ClaimEntry certify_rank_three(const ConstructionBundle<Scalar>& bundle, const VerifyOptions& options) {
  Stopwatch sw;
  const Matrix<Scalar>& b = bundle.b;
  ClaimEntry e{"rank_three", Verdict::Inconclusive, json::object(), matrix_precision(b), 0.0};
  e.witness["upper_bound"] = "structural: A = B Lambda B^T with B having 3 columns";

  if (b.rows() < 3 || b.cols() != 3) {
    e.verdict = Verdict::Falsified;
    e.witness["reason"] = "B has fewer than 3 rows, so rank(A) <= 2; the construction needs k >= 2 (k >= 3 in the intended regime)";
    e.wall_seconds = sw.seconds();
    return e;
  }

  if constexpr (is_exact<Scalar>) {
    // Tripwire: sampled 4x4 minors of A must vanish.
    const Matrix<Rational>& a = bundle.a;
    if (a.rows() >= 4) {
      std::mt19937_64 rng(options.seed ^ 0x4d494e4f52ULL);
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(a.rows()));
      long checked = 0;
      for (long s = 0; s < options.rank_tripwire_samples; ++s) {
        std::iota(idx.begin(), idx.end(), Eigen::Index{0});
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<Eigen::Index> rows(idx.begin(), idx.begin() + 4);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<Eigen::Index> cols(idx.begin(), idx.begin() + 4);
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        Matrix<Rational> m(4, 4);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) m(i, j) = a(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        const Rational d = exact_determinant(m);
        ++checked;
        if (!d.is_zero()) {
          e.verdict = Verdict::Falsified;
          e.witness["nonzero_4x4_minor"] = {{"rows", rows}, {"cols", cols}};
          e.wall_seconds = sw.seconds();
          return e;
        }
      }
      e.witness["tripwire_4x4_minors_checked"] = checked;
    }
  }

  // Lower bound: a nonsingular 3x3 block of B, rows {1,2,3} first.
  auto candidates = all_triples(b.rows());
  long tried = 0;
  for (const auto& t : candidates) {
    ++tried;
    const Scalar d = det3(rows_of(b, t));
    const Cert c = certify_sign(d);
    if (c == Cert::Positive || c == Cert::Negative) {
      e.verdict = Verdict::Certified;
      e.witness["rank"] = 3;
      e.witness["b_rows"] = {t[0] + 1, t[1] + 1, t[2] + 1};
      e.witness["det"] = describe(d);
      e.witness["triples_tried"] = tried;
      e.wall_seconds = sw.seconds();
      return e;
    }
  }
  e.witness["triples_tried"] = tried;
  if constexpr (is_exact<Scalar>) {
    e.verdict = Verdict::Falsified;
    e.witness["reason"] = "every 3x3 minor of B is zero: rank(A) < 3";
  } else {
    e.verdict = Verdict::Inconclusive;
    e.witness["reason"] = "every candidate 3x3 minor of B encloses zero at this precision";
  }
  e.wall_seconds = sw.seconds();
  return e;
}

template <class Scalar>
ClaimEntry verify_principal_3x3_minors(const Matrix<Scalar>& a, bool exhaustive, const VerifyOptions& options) {
  Stopwatch sw;
  ClaimEntry e{"principal_minors", Verdict::Certified, json::object(), matrix_precision(a), 0.0};
  const auto triples = minor_triples(a.rows(), exhaustive || options.exhaustive_minors, options);
  json falsified = json::array(), unknown = json::array();
  long unknown_count = 0, falsified_count = 0;
  for (const auto& t : triples) {
    const Scalar d = det3(principal(a, t));
    const Cert c = certify_sign(d);
    if (c == Cert::Negative) continue;
    const json where = {t[0] + 1, t[1] + 1, t[2] + 1};
    if (c == Cert::Unknown) {
      ++unknown_count;
      if (unknown.size() < 10) unknown.push_back({{"triple", where}, {"det", describe(d)}});
    } else {
      ++falsified_count;
      if (falsified.size() < 10) falsified.push_back({{"triple", where}, {"det", describe(d)}});
    }
  }
  const long total = static_cast<long>(all_triples(a.rows()).size());
  e.witness["checked"] = triples.size();
  e.witness["total"] = total;
  e.witness["exhaustive"] = static_cast<long>(triples.size()) == total;
  if (falsified_count > 0) {
    e.verdict = Verdict::Falsified;
    e.witness["nonnegative_count"] = falsified_count;
    e.witness["nonnegative"] = falsified;
  } else if (unknown_count > 0) {
    e.verdict = Verdict::Inconclusive;
    e.witness["undecided_count"] = unknown_count;
    e.witness["undecided"] = unknown;
    e.witness["suggestion"] = "retry at doubled precision";
  }
  e.wall_seconds = sw.seconds();
  return e;
}

template <class Scalar>
std::optional<InertiaTriple> inertia_via_gram(const Matrix<Scalar>& b, const Matrix<Scalar>& lambda, json* witness) {
  if (b.cols() != 3) throw std::invalid_argument("inertia_via_gram: B must have 3 columns");
  Matrix<Scalar> g(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Scalar acc(0);
      for (Eigen::Index r = 0; r < b.rows(); ++r) acc = acc + b(r, i) * b(r, j);
      g(i, j) = acc;
      g(j, i) = acc;
    }
  Matrix<Scalar> m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar acc = lambda(i, 0) * g(0, j);
      acc = acc + lambda(i, 1) * g(1, j);
      acc = acc + lambda(i, 2) * g(2, j);
      m(i, j) = acc;
    }

  // det(x I - M) = x^3 + c2 x^2 + c1 x + c0.
  const Scalar c2 = -(m(0, 0) + m(1, 1) + m(2, 2));
  const Scalar c1 = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                    (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
  const Scalar c0 = -det3(m);
  const long n = b.rows();

  if constexpr (is_exact<Scalar>) {
    const UniPoly p(std::vector<Rational>{c0, c1, c2, Rational(1)});
    const long plus = count_roots_with_multiplicity(p, Rational(0), std::nullopt);
    const long minus = count_roots_with_multiplicity(p.reflect(), Rational(0), std::nullopt);
    if (witness) {
      (*witness)["char_poly"] = p.str("x");
      (*witness)["method"] = "sturm on square-free factors";
      (*witness)["distinct_positive_roots"] = sturm_count_roots(p, Rational(0), std::nullopt);
      (*witness)["distinct_negative_roots"] = sturm_count_roots(p.reflect(), Rational(0), std::nullopt);
    }
    return InertiaTriple{plus, minus, n - plus - minus};
  } else {
    const std::array<Cert, 4> signs{Cert::Positive, certify_sign(c2), certify_sign(c1), certify_sign(c0)};
    if (witness) {
      (*witness)["method"] = "descartes on certified coefficient signs (real-rooted cubic)";
      (*witness)["coefficients"] = {describe(c2), describe(c1), describe(c0)};
    }
    if (std::any_of(signs.begin(), signs.end(), [](Cert c) { return c == Cert::Unknown; })) return std::nullopt;
    auto variations = [&](bool reflect) {
      long count = 0;
      int last = 0;
      for (int j = 0; j < 4; ++j) {  // j indexes descending degree 3..0
        if (signs[static_cast<std::size_t>(j)] == Cert::Zero) continue;
        int s = signs[static_cast<std::size_t>(j)] == Cert::Positive ? 1 : -1;
        if (reflect && (3 - j) % 2 == 1) s = -s;
        if (last != 0 && s != last) ++count;
        last = s;
      }
      return count;
    };
    const long plus = variations(false), minus = variations(true);
    return InertiaTriple{plus, minus, n - plus - minus};
  }
}

template <class Scalar>
ClaimEntry verify_inertia(const ConstructionBundle<Scalar>& bundle, std::optional<InertiaTriple>* out) {
  Stopwatch sw;
  ClaimEntry e{"inertia", Verdict::Inconclusive, json::object(), matrix_precision(bundle.b), 0.0};
  json w = json::object();
  const auto triple = inertia_via_gram(bundle.b, bundle.lambda, &w);
  const long n = bundle.b.rows();
  e.witness = w;
  e.witness["expected"] = {2, 1, n - 3};
  if (!triple) {
    e.witness["reason"] = "characteristic coefficient signs undecided at this precision";
  } else {
    e.witness["inertia"] = {triple->n_plus, triple->n_minus, triple->n_zero};
    e.verdict = (*triple == InertiaTriple{2, 1, n - 3}) ? Verdict::Certified : Verdict::Falsified;
  }
  if (out) *out = triple;
  e.wall_seconds = sw.seconds();
  return e;
}

template <class Scalar>
ClaimEntry verify_factorization(const ConstructionBundle<Scalar>& bundle, const SymbolicCertificate& pair_identity) {
  Stopwatch sw;
  ClaimEntry e{"factorization", Verdict::Certified, json::object(), matrix_precision(bundle.a), 0.0};
  const Matrix<Rational> expected_lambda = build_lambda<Rational>();
  if (bundle.lambda.rows() != 3 || bundle.lambda.cols() != 3 || bundle.b.cols() != 3 ||
      bundle.a.rows() != bundle.b.rows() || bundle.a.cols() != bundle.b.rows()) {
    e.verdict = Verdict::Falsified;
    e.witness["reason"] = "shape mismatch between Lambda, B and A";
    e.wall_seconds = sw.seconds();
    return e;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      bool ok;
      if constexpr (is_exact<Scalar>) ok = bundle.lambda(i, j) == expected_lambda(i, j);
      else ok = bundle.lambda(i, j).contains(expected_lambda(i, j)) && bundle.lambda(i, j).is_point();
      if (!ok) {
        e.verdict = Verdict::Falsified;
        e.witness["lambda_mismatch"] = one_based(i, j);
        e.wall_seconds = sw.seconds();
        return e;
      }
    }

  const Matrix<Scalar> recomputed = build_a(bundle.b, bundle.lambda);
  Matrix<Scalar> expanded;
  if constexpr (!is_exact<Scalar>) {
    if (static_cast<Eigen::Index>(2 * bundle.h.size()) == bundle.a.rows())
      expanded = build_a_expanded(bundle.h, matrix_precision(bundle.a));
  }
  long undecided = 0;
  for (Eigen::Index p = 0; p < recomputed.rows(); ++p)
    for (Eigen::Index q = 0; q < recomputed.cols(); ++q) {
      const Scalar& stored = bundle.a(p, q);
      const Scalar& fresh = recomputed(p, q);
      if constexpr (is_exact<Scalar>) {
        if (!(stored == fresh)) {
          e.verdict = Verdict::Falsified;
          e.witness["mismatch"] = {{"position", one_based(p, q)}, {"stored", describe(stored)}, {"recomputed", describe(fresh)}};
          e.wall_seconds = sw.seconds();
          return e;
        }
      } else {
        const bool exact_zero = stored.is_point() && stored.lo().is_zero();
        if (is_pair(p, q) && exact_zero && pair_identity.proved() && fresh.contains_zero()) continue;
        const auto meets = [&](const Interval& x) { return !(stored.hi() < x.lo() || x.hi() < stored.lo()); };
        const bool has_expanded = expanded.size() > 0;
        if (stored.contains(fresh) && (!has_expanded || meets(expanded(p, q)))) continue;
        if (has_expanded && stored.contains(expanded(p, q)) && meets(fresh)) continue;
        const bool disjoint = !meets(fresh) || (has_expanded && !meets(expanded(p, q)));
        if (disjoint) {
          e.verdict = Verdict::Falsified;
          e.witness["mismatch"] = {{"position", one_based(p, q)}, {"stored", describe(stored)}, {"recomputed", describe(fresh)}};
          e.wall_seconds = sw.seconds();
          return e;
        }
        ++undecided;
      }
    }
  if (undecided > 0) {
    e.verdict = Verdict::Inconclusive;
    e.witness["entries_not_enclosing_recomputation"] = undecided;
  }
  e.witness["check"] = is_exact<Scalar> ? "A == B Lambda B^T exactly"
                                         : "stored A encloses B Lambda B^T or its expansion in h, and meets both";
  e.wall_seconds = sw.seconds();
  return e;
}

template <class Scalar>
ClaimEntry verify_chain(const ConstructionBundle<Scalar>& bundle, const SymbolicCertificate& range) {
  Stopwatch sw;
  ClaimEntry e{"chain", Verdict::Certified, json::object(), matrix_precision(bundle.b), 0.0};
  const auto& h = bundle.h;
  e.witness["k"] = h.size();
  if (h.empty() || static_cast<Eigen::Index>(2 * h.size()) != bundle.b.rows()) {
    e.verdict = Verdict::Falsified;
    e.witness["reason"] = "chain length does not match B";
    e.wall_seconds = sw.seconds();
    return e;
  }
  auto fail = [&](const std::string& why, std::size_t i) {
    e.verdict = Verdict::Falsified;
    e.witness["reason"] = why;
    e.witness["index"] = i + 1;
  };
  auto undecided = [&](const std::string& why, std::size_t i) {
    if (e.verdict != Verdict::Certified) return;
    e.verdict = Verdict::Inconclusive;
    e.witness["reason"] = why;
    e.witness["index"] = i + 1;
  };

  for (std::size_t i = 0; i < h.size() && e.verdict != Verdict::Falsified; ++i) {
    const Cert c = certify_sign(h[i]);
    if (c == Cert::Negative || c == Cert::Zero) fail("h_i is not positive", i);
    else if (c == Cert::Unknown) undecided("positivity of h_i undecided", i);
    if (i == 0) continue;
    if constexpr (is_exact<Scalar>) {
      if (!(h[i] < h[i - 1])) fail("chain is not strictly decreasing", i);
    } else {
      if (h[i - 1].hi() < h[i].lo()) fail("chain is not strictly decreasing", i);
      else if (!(h[i].hi() < h[i - 1].lo())) undecided("strict decrease undecided", i);
    }
  }
  if (range.h_star && e.verdict != Verdict::Falsified) {
    e.witness["h_star"] = range.h_star->str();
    if constexpr (is_exact<Scalar>) {
      if (*range.h_star < h[0]) fail("h_1 exceeds the positivity range H*", 0);
    } else {
      if (h[0].lo().compare(*range.h_star) > 0) fail("h_1 exceeds the positivity range H*", 0);
      else if (h[0].hi().compare(*range.h_star) > 0) undecided("h_1 <= H* undecided", 0);
    }
  }

  // B holds the row formulas at the chain values.
  const Matrix<Scalar> fresh = build_b(h);
  for (Eigen::Index r = 0; r < fresh.rows() && e.verdict != Verdict::Falsified; ++r)
    for (Eigen::Index c = 0; c < 3; ++c) {
      bool ok;
      if constexpr (is_exact<Scalar>) ok = fresh(r, c) == bundle.b(r, c);
      else ok = bundle.b(r, c).contains(fresh(r, c));
      if (!ok) {
        fail("B entry does not match the row formula at h", static_cast<std::size_t>(r / 2));
        e.witness["b_entry"] = one_based(r, c);
        break;
      }
    }
  e.wall_seconds = sw.seconds();
  return e;
}

template <class Scalar>
CertificateReport full_verify(const ConstructionBundle<Scalar>& bundle, const VerifyOptions& options) {
  Stopwatch total;
  CertificateReport report;
  report.mode = bundle.mode;

  Stopwatch s1;
  const SymbolicCertificate pair = verify_pair_orthogonality();
  report.claims.push_back(from_symbolic(pair, s1.seconds()));
  Stopwatch s2;
  const SymbolicCertificate dens = verify_denominators_positive();
  report.claims.push_back(from_symbolic(dens, s2.seconds()));
  Stopwatch s3;
  const SymbolicCertificate range = verify_b_entry_positivity_range();
  report.claims.push_back(from_symbolic(range, s3.seconds()));

  report.claims.push_back(verify_chain(bundle, range));
  report.claims.push_back(verify_factorization(bundle, pair));
  report.claims.push_back(verify_symmetry(bundle.a));
  report.claims.push_back(verify_zero_pattern(bundle.a, pair));
  const ClaimEntry rank = certify_rank_three(bundle, options);
  report.claims.push_back(rank);
  report.claims.push_back(verify_principal_3x3_minors(bundle.a, options.exhaustive_minors, options));
  std::optional<InertiaTriple> triple;
  ClaimEntry inertia = verify_inertia(bundle, &triple);
  if (rank.verdict == Verdict::Certified && triple && inertia.verdict != Verdict::Certified) {
    // Full column rank forces the inertia of Lambda; anything else is a bug signal.
    inertia.witness["sylvester_inconsistency"] = true;
  }
  report.claims.push_back(std::move(inertia));
  report.inertia = triple;
  report.overall = aggregate(report.claims);
  if constexpr (!is_exact<Scalar>) report.precision_trace.push_back(bundle.mode.precision_bits);
  report.wall_seconds = total.seconds();
  return report;
}

CertificateReport verify_paper_with_retry(const IntervalBundle& bundle, const VerifyOptions& options) {
  CertificateReport report = full_verify(bundle, options);
  std::vector<long> trace = report.precision_trace;
  long p = bundle.mode.precision_bits;
  while (report.overall == Verdict::Inconclusive && p > 0 && 2 * p <= options.max_precision_bits) {
    p *= 2;
    IntervalBundle finer;
    try {
      finer = construct_paper(bundle.mode.k, bundle.mode.h1, p);
    } catch (const PrecisionExhausted&) {
      trace.push_back(p);
      continue;
    }
    report = full_verify(finer, options);
    trace.push_back(p);
  }
  report.precision_trace = trace;
  return report;
}

template ClaimEntry verify_symmetry(const Matrix<Rational>&);
template ClaimEntry verify_symmetry(const Matrix<Interval>&);
template ClaimEntry verify_zero_pattern(const Matrix<Rational>&, const SymbolicCertificate&);
template ClaimEntry verify_zero_pattern(const Matrix<Interval>&, const SymbolicCertificate&);
template ClaimEntry certify_rank_three(const ExactBundle&, const VerifyOptions&);
template ClaimEntry certify_rank_three(const IntervalBundle&, const VerifyOptions&);
template ClaimEntry verify_principal_3x3_minors(const Matrix<Rational>&, bool, const VerifyOptions&);
template ClaimEntry verify_principal_3x3_minors(const Matrix<Interval>&, bool, const VerifyOptions&);
template std::optional<InertiaTriple> inertia_via_gram(const Matrix<Rational>&, const Matrix<Rational>&, json*);
template std::optional<InertiaTriple> inertia_via_gram(const Matrix<Interval>&, const Matrix<Interval>&, json*);
template ClaimEntry verify_inertia(const ExactBundle&, std::optional<InertiaTriple>*);
template ClaimEntry verify_inertia(const IntervalBundle&, std::optional<InertiaTriple>*);
template ClaimEntry verify_factorization(const ExactBundle&, const SymbolicCertificate&);
template ClaimEntry verify_factorization(const IntervalBundle&, const SymbolicCertificate&);
template ClaimEntry verify_chain(const ExactBundle&, const SymbolicCertificate&);
template ClaimEntry verify_chain(const IntervalBundle&, const SymbolicCertificate&);
template CertificateReport full_verify(const ExactBundle&, const VerifyOptions&);
template CertificateReport full_verify(const IntervalBundle&, const VerifyOptions&);

} // namespace nnrank
