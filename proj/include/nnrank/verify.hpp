#pragma once

// Certification of the matrix-level claims for a concrete bundle.
//
// Every check runs on exact rationals (surrogate mode) or on outward-rounded
// intervals (interval mode). Interval checks can end Inconclusive; exact checks
// never do.

#include "nnrank/construction.hpp"
#include "nnrank/symbolic.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nnrank {

enum class Verdict { Certified, Falsified, Inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct ClaimEntry {
  std::string id;
  Verdict verdict = Verdict::Inconclusive;
  nlohmann::json witness = nlohmann::json::object();
  long precision_bits = 0;  // 0 for exact checks
  double wall_seconds = 0.0;
};

struct InertiaTriple {
  long n_plus = 0, n_minus = 0, n_zero = 0;
  friend bool operator==(const InertiaTriple&, const InertiaTriple&) = default;
};

struct VerifyOptions {
  /// Check every principal 3x3 minor even above the exhaustive threshold.
  bool exhaustive_minors = false;
  /// Matrices with 2k <= this are always checked exhaustively.
  long exhaustive_dimension = 20;
  long minor_sample_size = 200;
  std::uint64_t seed = 0x6e6e72616e6bULL;
  /// 4x4 minors of A sampled as a rank <= 3 tripwire (exact mode).
  long rank_tripwire_samples = 12;
  /// Interval mode: Inconclusive reruns at doubled precision up to this ceiling.
  long max_precision_bits = 1L << 20;
};

struct CertificateReport {
  ModeInfo mode;
  std::vector<ClaimEntry> claims;
  std::optional<InertiaTriple> inertia;
  Verdict overall = Verdict::Inconclusive;
  std::vector<long> precision_trace;
  double wall_seconds = 0.0;

  const ClaimEntry* find(const std::string& id) const;
};

/// Aggregation rule: Falsified dominates, then Inconclusive; Certified only if all are.
Verdict aggregate(const std::vector<ClaimEntry>& claims);

template <class Scalar>
ClaimEntry verify_symmetry(const Matrix<Scalar>& a);

/// Within-pair entries exactly zero (interval mode: exact zero in the matrix,
/// justified by `pair_identity`), every other entry strictly positive.
template <class Scalar>
ClaimEntry verify_zero_pattern(const Matrix<Scalar>& a, const SymbolicCertificate& pair_identity);

template <class Scalar>
ClaimEntry certify_rank_three(const ConstructionBundle<Scalar>& bundle, const VerifyOptions& options = {});

template <class Scalar>
ClaimEntry verify_principal_3x3_minors(const Matrix<Scalar>& a, bool exhaustive, const VerifyOptions& options = {});

/// Inertia of B Lambda B^T from the characteristic cubic of Lambda (B^T B).
/// Exact mode counts roots with Sturm sequences on the square-free factors;
/// interval mode uses the certified coefficient signs (Descartes' rule, exact
/// for a real-rooted cubic). Empty if the signs cannot be decided.
template <class Scalar>
std::optional<InertiaTriple> inertia_via_gram(const Matrix<Scalar>& b, const Matrix<Scalar>& lambda,
                                              nlohmann::json* witness = nullptr);

template <class Scalar>
ClaimEntry verify_inertia(const ConstructionBundle<Scalar>& bundle, std::optional<InertiaTriple>* out = nullptr);

/// Lambda is the expected matrix and A agrees with B Lambda B^T.
template <class Scalar>
ClaimEntry verify_factorization(const ConstructionBundle<Scalar>& bundle, const SymbolicCertificate& pair_identity);

/// The chain is positive, strictly decreasing and inside the certified
/// positivity range (0, H*], and B holds the row formulas evaluated on it.
template <class Scalar>
ClaimEntry verify_chain(const ConstructionBundle<Scalar>& bundle, const SymbolicCertificate& range);

/// Runs every check once on the given bundle.
template <class Scalar>
CertificateReport full_verify(const ConstructionBundle<Scalar>& bundle, const VerifyOptions& options = {});

/// Interval mode with automatic precision doubling while the verdict is
/// Inconclusive, up to options.max_precision_bits.
CertificateReport verify_paper_with_retry(const IntervalBundle& bundle, const VerifyOptions& options = {});

/// Triples used by the minor check (1 entry per triple, 0-based, ascending).
std::vector<std::array<Eigen::Index, 3>> minor_triples(Eigen::Index n, bool exhaustive, const VerifyOptions& options);

extern template ClaimEntry verify_symmetry(const Matrix<Rational>&);
extern template ClaimEntry verify_symmetry(const Matrix<Interval>&);
extern template ClaimEntry verify_zero_pattern(const Matrix<Rational>&, const SymbolicCertificate&);
extern template ClaimEntry verify_zero_pattern(const Matrix<Interval>&, const SymbolicCertificate&);
extern template ClaimEntry certify_rank_three(const ExactBundle&, const VerifyOptions&);
extern template ClaimEntry certify_rank_three(const IntervalBundle&, const VerifyOptions&);
extern template ClaimEntry verify_principal_3x3_minors(const Matrix<Rational>&, bool, const VerifyOptions&);
extern template ClaimEntry verify_principal_3x3_minors(const Matrix<Interval>&, bool, const VerifyOptions&);
extern template std::optional<InertiaTriple> inertia_via_gram(const Matrix<Rational>&, const Matrix<Rational>&, nlohmann::json*);
extern template std::optional<InertiaTriple> inertia_via_gram(const Matrix<Interval>&, const Matrix<Interval>&, nlohmann::json*);
extern template ClaimEntry verify_inertia(const ExactBundle&, std::optional<InertiaTriple>*);
extern template ClaimEntry verify_inertia(const IntervalBundle&, std::optional<InertiaTriple>*);
extern template ClaimEntry verify_factorization(const ExactBundle&, const SymbolicCertificate&);
extern template ClaimEntry verify_factorization(const IntervalBundle&, const SymbolicCertificate&);
extern template ClaimEntry verify_chain(const ExactBundle&, const SymbolicCertificate&);
extern template ClaimEntry verify_chain(const IntervalBundle&, const SymbolicCertificate&);
extern template CertificateReport full_verify(const ExactBundle&, const VerifyOptions&);
extern template CertificateReport full_verify(const IntervalBundle&, const VerifyOptions&);

} // namespace nnrank
