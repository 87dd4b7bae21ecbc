#pragma once

// Exact real-root counting with Sturm sequences.

#include "nnrank/poly.hpp"
#include "nnrank/rational.hpp"

#include <optional>
#include <vector>

namespace nnrank {

/// An endpoint of a counting range; std::nullopt stands for the infinite end.
using Endpoint = std::optional<Rational>;

/// p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
std::vector<UniPoly> sturm_chain(const UniPoly& p);

/// Number of distinct real roots of p in (a, b]. The square-free part is taken
/// internally. Throws std::domain_error for the zero polynomial.
int sturm_count_roots(const UniPoly& p, const Endpoint& a, const Endpoint& b);

/// Roots in (a, b] counted with multiplicity (square-free decomposition + Sturm).
int count_roots_with_multiplicity(const UniPoly& p, const Endpoint& a, const Endpoint& b);

/// Multiplicity of `r` as a root of p (0 if not a root).
int root_multiplicity(const UniPoly& p, const Rational& r);

struct RootEnclosure {
  Rational lo, hi;   // the root lies in [lo, hi]; lo == hi for an exact rational root
  int multiplicity;
};

/// Isolates every distinct real root into a rational interval of width <= tol,
/// in increasing order.
std::vector<RootEnclosure> isolate_real_roots(const UniPoly& p, const Rational& tol);

} // namespace nnrank
