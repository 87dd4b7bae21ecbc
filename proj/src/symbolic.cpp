#include "nnrank/symbolic.hpp"

#include "nnrank/construction.hpp"
#include "nnrank/sturm.hpp"

#include <vector>

namespace nnrank {

nlohmann::json SymbolicCertificate::witness() const {
  nlohmann::json w = nlohmann::json::object();
  if (function) {
    w["function"] = function->str("h");
    w["numerator"] = function->num().str("h");
  }
  if (!sturm.empty()) w["sturm"] = sturm;
  if (h_star) w["h_star"] = h_star->str();
  return w;
}

RatFunc pair_orthogonality_function() {
  const RatFunc h = RatFunc::x();
  return normalize(lambda_form(b_row_even(h), b_row_odd(h)));
}

SymbolicCertificate verify_pair_orthogonality() {
  SymbolicCertificate cert;
  cert.claim_id = "symbolic.pair_orthogonality";
  cert.function = pair_orthogonality_function();
  cert.verdict = ratfunc_is_zero(*cert.function) ? SymbolicVerdict::Proved : SymbolicVerdict::Refuted;
  return cert;
}

SymbolicCertificate verify_denominators_positive() {
  SymbolicCertificate cert;
  cert.claim_id = "symbolic.denominators_positive";
  const std::vector<UniPoly> dens{
      UniPoly(std::vector<Rational>{7, 0, 1}),
      UniPoly(std::vector<Rational>{21, 1, 3}),
  };
  bool ok = true;
  for (const UniPoly& d : dens) {
    const int roots = sturm_count_roots(d, std::nullopt, std::nullopt);
    cert.sturm[d.str("h")] = {{"real_roots", roots}, {"value_at_0", d.eval(0).str()}};
    ok = ok && roots == 0 && d.eval(0).sign() > 0;
  }
  cert.verdict = ok ? SymbolicVerdict::Proved : SymbolicVerdict::Refuted;
  return cert;
}

SymbolicCertificate verify_b_entry_positivity_range() {
  SymbolicCertificate cert;
  cert.claim_id = "symbolic.b_entry_positivity_range";
  const RatFunc h = RatFunc::x();
  const Row3<RatFunc> odd = b_row_odd(h);
  const Row3<RatFunc> even = b_row_even(h);

  std::vector<UniPoly> polys;
  for (const RatFunc& f : {odd[0], odd[1], odd[2], even[0], even[1], even[2]}) {
    polys.push_back(f.num());
    polys.push_back(f.den());
  }

  // Smallest positive root over every numerator and denominator.
  const Rational step(mpz_class(1), mpz_class(1000));
  std::optional<Rational> first_root;
  for (const UniPoly& p : polys) {
    if (p.degree() <= 0) continue;
    for (const RootEnclosure& r : isolate_real_roots(p, step / Rational(2))) {
      if (r.hi.sign() <= 0) continue;
      if (!first_root || r.lo < *first_root) first_root = r.lo;
    }
  }
  if (!first_root) {
    cert.verdict = SymbolicVerdict::Refuted;  // no finite threshold: unexpected for these formulas
    return cert;
  }
  mpz_class steps;
  mpz_fdiv_q(steps.get_mpz_t(), mpz_class(first_root->num() * 1000).get_mpz_t(), first_root->den().get_mpz_t());
  const Rational h_star = Rational(steps) * step;

  bool ok = h_star.sign() > 0;
  for (const UniPoly& p : polys) {
    const int roots = p.degree() > 0 ? sturm_count_roots(p, Rational(0), h_star) : 0;
    // Positive at H*, no sign change on (0, H*], and nonzero at 0+ (no root at 0 either).
    ok = ok && roots == 0 && p.eval(h_star).sign() > 0 && p.eval(0).sign() > 0;
    if (p.degree() > 0) cert.sturm[p.str("h")] = {{"roots_in_(0,H*]", roots}};
  }
  cert.h_star = h_star;
  cert.verdict = ok ? SymbolicVerdict::Proved : SymbolicVerdict::Refuted;
  return cert;
}

} // namespace nnrank
