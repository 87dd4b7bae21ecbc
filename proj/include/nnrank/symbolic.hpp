#pragma once

// Identities and sign facts about the B-row formulas, proved once for all h by
// evaluating the same templated formulas on the symbolic variable h.

#include "nnrank/poly.hpp"
#include "nnrank/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace nnrank {

enum class SymbolicVerdict { Proved, Refuted };

struct SymbolicCertificate {
  std::string claim_id;
  SymbolicVerdict verdict = SymbolicVerdict::Refuted;
  /// Canonical form of the function the claim is about (identities), if any.
  std::optional<RatFunc> function;
  /// Sturm data: polynomial text -> number of real roots in the checked range.
  nlohmann::json sturm = nlohmann::json::object();
  /// Positivity threshold (b-entry range claim only).
  std::optional<Rational> h_star;

  bool proved() const { return verdict == SymbolicVerdict::Proved; }
  nlohmann::json witness() const;
};

/// odd(h) Lambda even(h)^T == 0 identically.
SymbolicCertificate verify_pair_orthogonality();
/// 7 + h^2 and 21 + h + 3h^2 have no real roots and are positive.
SymbolicCertificate verify_denominators_positive();
/// Largest H* (a multiple of 1/1000) with every B entry positive on (0, H*].
SymbolicCertificate verify_b_entry_positivity_range();

/// The pair function f(h) in canonical form (exposed for tests and reports).
RatFunc pair_orthogonality_function();

} // namespace nnrank
