#include "nnrank/sturm.hpp"

#include <stdexcept>

namespace nnrank {

namespace {

int variations(const std::vector<UniPoly>& chain, const Endpoint& at, bool at_plus_infinity) {
  int count = 0, last = 0;
  for (const UniPoly& q : chain) {
    const int s = at ? q.eval(*at).sign() : q.sign_at_infinity(at_plus_infinity);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

Rational cauchy_bound(const UniPoly& p) {
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    const Rational r = abs(p.coeff(i) / p.lead());
    if (m < r) m = r;
  }
  return m + Rational(1);
}

} // namespace

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p};
  if (p.degree() <= 0) return chain;
  chain.push_back(p.derivative());
  while (true) {
    UniPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sturm_count_roots(const UniPoly& p, const Endpoint& a, const Endpoint& b) {
  if (p.is_zero()) throw std::domain_error("sturm_count_roots: zero polynomial");
  if (a && b && *b <= *a) return 0;
  const auto chain = sturm_chain(square_free_part(p));
  return variations(chain, a, false) - variations(chain, b, true);
}

int count_roots_with_multiplicity(const UniPoly& p, const Endpoint& a, const Endpoint& b) {
  if (p.is_zero()) throw std::domain_error("count_roots_with_multiplicity: zero polynomial");
  const auto factors = square_free_decomposition(p);
  int total = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() <= 0) continue;
    total += static_cast<int>(i + 1) * sturm_count_roots(factors[i], a, b);
  }
  return total;
}

int root_multiplicity(const UniPoly& p, const Rational& r) {
  if (p.is_zero()) throw std::domain_error("root_multiplicity: zero polynomial");
  int m = 0;
  UniPoly q = p;
  const UniPoly lin(std::vector<Rational>{-r, 1});
  while (q.degree() > 0) {
    auto [quot, rem] = divmod(q, lin);
    if (!rem.is_zero()) break;
    q = std::move(quot);
    ++m;
  }
  return m;
}

std::vector<RootEnclosure> isolate_real_roots(const UniPoly& p, const Rational& tol) {
  std::vector<RootEnclosure> out;
  if (p.degree() <= 0) return out;
  const UniPoly sf = square_free_part(p);
  const auto chain = sturm_chain(sf);
  auto count = [&](const Rational& a, const Rational& b) {
    return variations(chain, a, false) - variations(chain, b, true);
  };

  // Work on half-open ranges (a, b]; a stack keeps the output ordered.
  const Rational bound = cauchy_bound(sf);
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int n = count(a, b);
    if (n == 0) continue;
    if (n == 1 && b - a <= tol) {
      if (sf.eval(b).is_zero()) {
        out.push_back({b, b, root_multiplicity(p, b)});
      } else {
        out.push_back({a, b, 0});
      }
      continue;
    }
    const Rational mid = (a + b) / Rational(2);
    stack.emplace_back(mid, b);
    stack.emplace_back(a, mid);
  }
  for (auto& r : out) {
    if (r.multiplicity == 0 && r.hi - r.lo <= Rational(1)) {
      // Snap onto an integer root when the enclosure holds one.
      mpz_class n;
      mpz_cdiv_q(n.get_mpz_t(), r.lo.get().get_num_mpz_t(), r.lo.get().get_den_mpz_t());
      const Rational cand(n);
      if (cand <= r.hi && sf.eval(cand).is_zero()) {
        r = {cand, cand, root_multiplicity(p, cand)};
      }
    }
    if (r.multiplicity == 0) {
      // Irrational or unresolved: multiplicity from the square-free factors.
      const auto factors = square_free_decomposition(p);
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() > 0 && sturm_count_roots(factors[i], r.lo, r.hi) > 0) {
          r.multiplicity = static_cast<int>(i + 1);
        }
      }
    }
  }
  return out;
}

} // namespace nnrank
