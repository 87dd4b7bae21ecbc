#include "nnrank/construction.hpp"

#include "nnrank/poly.hpp"

#include <sstream>

namespace nnrank {

std::string to_string(ScalarKind kind) {
  return kind == ScalarKind::PaperInterval ? "paper" : "surrogate";
}

ScalarKind scalar_kind_from_string(const std::string& s) {
  if (s == "paper") return ScalarKind::PaperInterval;
  if (s == "surrogate") return ScalarKind::SurrogateExact;
  throw std::invalid_argument("unknown mode: " + s);
}

SurrogateSpec SurrogateSpec::parse(const std::string& s) {
  if (s == "default") return {s};
  if (s.rfind("list:", 0) == 0) {
    SurrogateSpec spec{s};
    spec.values(0);  // syntax check
    return spec;
  }
  throw std::invalid_argument("unknown surrogate spec: " + s);
}

std::vector<Rational> SurrogateSpec::values(long k) const {
  std::vector<Rational> out;
  if (text == "default") {
    for (long i = 1; i <= k; ++i) out.push_back(Rational::pow10(-(1L << i)));
    return out;
  }
  std::stringstream ss(text.substr(5));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (static_cast<long>(out.size()) < k)
    throw std::invalid_argument("surrogate list has fewer than k values");
  out.resize(static_cast<std::size_t>(k));
  return out;
}

HChain<Interval> hchain_paper(long k, const Rational& h1, long precision_bits) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(Rational(0) < h1 && h1 < Rational(1))) throw std::invalid_argument("h1 must lie in (0, 1)");
  if (precision_bits < kMinPrecision) throw std::invalid_argument("precision_bits must be >= 32");

  HChain<Interval> chain;
  chain.mode = {ScalarKind::PaperInterval, k, h1, "", precision_bits};
  chain.origin = "paper(h1=" + h1.str() + ")";
  chain.values.push_back(Interval::from_rational(h1, precision_bits));
  for (long i = 1; i < k; ++i) {
    const Interval& prev = chain.values.back();
    Interval next = interval_exp(-(Interval(1) / prev), precision_bits);
    if (next.sign_certificate() != Sign::Positive)
      throw PrecisionExhausted(i + 1, "cannot certify h_" + std::to_string(i + 1) + " > 0");
    if (!(next.hi() < prev.lo()))
      throw PrecisionExhausted(i + 1, "cannot certify h_" + std::to_string(i + 1) + " < h_" + std::to_string(i));
    chain.values.push_back(std::move(next));
  }
  return chain;
}

HChain<Rational> hchain_surrogate(long k, const SurrogateSpec& spec) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  HChain<Rational> chain;
  chain.mode = {ScalarKind::SurrogateExact, k, Rational(0), spec.text, 0};
  chain.origin = "surrogate(" + spec.text + ")";
  chain.values = spec.values(k);
  for (std::size_t i = 0; i < chain.values.size(); ++i) {
    if (chain.values[i].sign() <= 0)
      throw std::invalid_argument("surrogate value h_" + std::to_string(i + 1) + " is not positive");
    if (i > 0 && !(chain.values[i] < chain.values[i - 1]))
      throw std::invalid_argument("surrogate chain is not strictly decreasing at h_" + std::to_string(i + 1));
  }
  return chain;
}

ExactBundle construct_from_chain(const HChain<Rational>& chain) {
  ExactBundle bundle;
  bundle.mode = chain.mode;
  bundle.h = chain.values;
  bundle.lambda = build_lambda<Rational>();
  bundle.b = build_b(chain.values);
  bundle.a = build_a(bundle.b, bundle.lambda);
  return bundle;
}

ExactBundle construct_surrogate(long k, const SurrogateSpec& spec) {
  return construct_from_chain(hchain_surrogate(k, spec));
}

void apply_pair_identity(Matrix<Interval>& a) {
  for (Eigen::Index p = 0; p + 1 < a.rows(); p += 2) {
    if (!a(p, p + 1).contains_zero())
      throw std::logic_error("within-pair entry enclosure excludes zero");
    const Interval zero(BigFloat(), BigFloat(), a(p, p + 1).precision());
    a(p, p + 1) = zero;
    a(p + 1, p) = zero;
  }
}

namespace {

// Row entries as polynomials over the common row denominator.
std::array<UniPoly, 3> row_numerators(bool odd, UniPoly& den) {
  const RatFunc x = RatFunc::x();
  const Row3<RatFunc> row = odd ? b_row_odd(x) : b_row_even(x);
  den = odd ? UniPoly(std::vector<Rational>{Rational(7), Rational(0), Rational(1)})
            : UniPoly(std::vector<Rational>{Rational(21), Rational(1), Rational(3)});
  std::array<UniPoly, 3> out;
  for (std::size_t c = 0; c < 3; ++c) {
    const RatFunc scaled = normalize(row[c] * RatFunc(den));
    if (scaled.den().degree() != 0) throw std::logic_error("row entry does not clear its denominator");
    out[c] = scaled.num() * UniPoly(Rational(1) / scaled.den().lead());
  }
  return out;
}

Interval horner(const std::vector<Rational>& c, const Interval& x, long prec) {
  Interval acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Interval::from_rational(*it, prec);
  return acc;
}

} // namespace

EntryExpansion entry_expansion(bool odd_row, bool odd_col) {
  UniPoly dx, dy;
  const auto s = row_numerators(odd_row, dx);
  const auto r = row_numerators(odd_col, dy);
  // Lambda r = (r1 + r2 + r3, r1 + r2 - r3, r1 - r2 + r3)
  const std::array<UniPoly, 3> lr = {r[0] + r[1] + r[2], r[0] + r[1] - r[2], r[0] - r[1] + r[2]};
  EntryExpansion e;
  int deg_x = 0, deg_y = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    deg_x = std::max(deg_x, s[a].degree());
    deg_y = std::max(deg_y, lr[a].degree());
  }
  e.num.assign(static_cast<std::size_t>(deg_x + 1), std::vector<Rational>(static_cast<std::size_t>(deg_y + 1)));
  for (std::size_t a = 0; a < 3; ++a)
    for (int i = 0; i <= s[a].degree(); ++i)
      for (int j = 0; j <= lr[a].degree(); ++j)
        e.num[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += s[a].coeff(i) * lr[a].coeff(j);
  e.den_x = dx.coeffs();
  e.den_y = dy.coeffs();
  return e;
}

Matrix<Interval> build_a_expanded(const std::vector<Interval>& h, long precision_bits) {
  std::array<EntryExpansion, 4> table;
  for (int t = 0; t < 4; ++t) table[static_cast<std::size_t>(t)] = entry_expansion(t / 2 == 0, t % 2 == 0);
  const auto n = static_cast<Eigen::Index>(2 * h.size());
  Matrix<Interval> a(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p; q < n; ++q) {
      const bool odd_p = p % 2 == 0, odd_q = q % 2 == 0;
      const EntryExpansion& e = table[static_cast<std::size_t>((odd_p ? 0 : 2) + (odd_q ? 0 : 1))];
      const Interval& x = h[static_cast<std::size_t>(p / 2)];
      const Interval& y = h[static_cast<std::size_t>(q / 2)];
      std::vector<Interval> ypow{Interval(1)};
      for (std::size_t j = 1; j < e.num[0].size(); ++j) ypow.push_back(ypow.back() * y);
      Interval sum(0), xpow(1);
      for (std::size_t i = 0; i < e.num.size(); ++i) {
        for (std::size_t j = 0; j < e.num[i].size(); ++j) {
          if (e.num[i][j].is_zero()) continue;
          sum = sum + Interval::from_rational(e.num[i][j], precision_bits) * xpow * ypow[j];
        }
        xpow = xpow * x;
      }
      a(p, q) = sum / (horner(e.den_x, x, precision_bits) * horner(e.den_y, y, precision_bits));
      if (q != p) a(q, p) = a(p, q);
    }
  return a;
}

IntervalBundle construct_paper(long k, const Rational& h1, long precision_bits) {
  const HChain<Interval> chain = hchain_paper(k, h1, precision_bits);
  IntervalBundle bundle;
  bundle.mode = chain.mode;
  bundle.h = chain.values;
  bundle.lambda = build_lambda<Interval>();
  bundle.b = build_b(chain.values);
  bundle.a = build_a_expanded(chain.values, precision_bits);
  apply_pair_identity(bundle.a);
  // Literal entries (Lambda, the ones column) are stamped with the bundle precision.
  const auto stamp = [precision_bits](const Interval& x) { return x.with_precision(precision_bits); };
  bundle.lambda = bundle.lambda.unaryExpr(stamp).eval();
  bundle.b = bundle.b.unaryExpr(stamp).eval();
  bundle.a = bundle.a.unaryExpr(stamp).eval();
  return bundle;
}

} // namespace nnrank
