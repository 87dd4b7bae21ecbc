#include "nnrank/nmf.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nnrank {

namespace {

double nearest_double(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get().get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

std::mt19937_64 restart_rng(std::uint64_t seed, long rank, long restart, long attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(rank), static_cast<std::uint32_t>(restart),
                    static_cast<std::uint32_t>(attempt)};
  return std::mt19937_64(seq);
}

void random_init(const Eigen::MatrixXd& a, long r, std::mt19937_64& rng, double floor, Eigen::MatrixXd& w,
                 Eigen::MatrixXd& h) {
  const double scale = std::sqrt(std::max(a.mean(), 0.0) / static_cast<double>(r));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] { return std::max(scale * (1.0 - u(rng)), floor); };  // (0, 1] scaled
  w.resize(a.rows(), r);
  h.resize(r, a.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = draw();
  for (Eigen::Index j = 0; j < h.cols(); ++j)
    for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, j) = draw();
}

void mu_step(const Eigen::MatrixXd& a, Eigen::MatrixXd& w, Eigen::MatrixXd& h) {
  const Eigen::MatrixXd wta = w.transpose() * a;
  const Eigen::MatrixXd wtwh = (w.transpose() * w) * h;
  h = h.cwiseProduct(wta.cwiseQuotient(wtwh.cwiseMax(kMuFloor)));
  const Eigen::MatrixXd aht = a * h.transpose();
  const Eigen::MatrixXd whht = w * (h * h.transpose());
  w = w.cwiseProduct(aht.cwiseQuotient(whht.cwiseMax(kMuFloor)));
}

void hals_step(const Eigen::MatrixXd& a, Eigen::MatrixXd& w, Eigen::MatrixXd& h) {
  {
    const Eigen::MatrixXd wta = w.transpose() * a;
    const Eigen::MatrixXd wtw = w.transpose() * w;
    for (Eigen::Index j = 0; j < h.rows(); ++j) {
      if (wtw(j, j) <= 0.0) continue;
      const Eigen::RowVectorXd next = h.row(j) + (wta.row(j) - wtw.row(j) * h) / wtw(j, j);
      h.row(j) = next.cwiseMax(0.0);
    }
  }
  const Eigen::MatrixXd aht = a * h.transpose();
  const Eigen::MatrixXd hht = h * h.transpose();
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    if (hht(j, j) <= 0.0) continue;
    const Eigen::VectorXd next = w.col(j) + (aht.col(j) - w * hht.col(j)) / hht(j, j);
    w.col(j) = next.cwiseMax(0.0);
  }
}

bool finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

} // namespace

std::string to_string(NmfAlgorithm a) { return a == NmfAlgorithm::HALS ? "hals" : "mu"; }

NmfAlgorithm nmf_algorithm_from_string(const std::string& s) {
  if (s == "hals") return NmfAlgorithm::HALS;
  if (s == "mu") return NmfAlgorithm::MultiplicativeUpdates;
  throw std::invalid_argument("unknown NMF algorithm: " + s);
}

Eigen::MatrixXd to_double(const Matrix<Rational>& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = nearest_double(a(i, j));
  return out;
}

Eigen::MatrixXd to_double(const Matrix<Interval>& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const Interval& x = a(i, j);
      out(i, j) = x.is_point() ? x.lo().to_double() : 0.5 * (x.lo().to_double() + x.hi().to_double());
    }
  return out;
}

double relative_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& w, const Eigen::MatrixXd& h) {
  const double err = (a - w * h).norm();
  const double scale = a.norm();
  return scale > 0.0 ? err / scale : err;
}

long nmf_iterate(const Eigen::MatrixXd& a, Eigen::MatrixXd& w, Eigen::MatrixXd& h, const NMFConfig& cfg,
                 std::vector<double>* trace) {
  double prev = relative_residual(a, w, h);
  if (trace) trace->push_back(prev);
  long it = 0;
  while (it < cfg.max_iterations) {
    if (cfg.algorithm == NmfAlgorithm::HALS) hals_step(a, w, h);
    else mu_step(a, w, h);
    ++it;
    const double cur = relative_residual(a, w, h);
    if (trace) trace->push_back(cur);
    if (!std::isfinite(cur)) break;
    if (cur <= cfg.target || std::abs(prev - cur) <= cfg.tolerance) break;
    prev = cur;
  }
  return it;
}

FactorPair nmf_run(const Eigen::MatrixXd& a, const NMFConfig& cfg, const FactorPair* warm) {
  if (cfg.rank < 1) throw std::invalid_argument("nmf_run: rank must be >= 1");
  if (cfg.restarts < 0) throw std::invalid_argument("nmf_run: restarts must be >= 0");
  if ((a.array() < 0.0).any() || !a.allFinite()) throw std::invalid_argument("nmf_run: A must be finite and nonnegative");

  FactorPair best;
  best.residual = std::numeric_limits<double>::infinity();
  long nonfinite = 0;
  auto consider = [&](Eigen::MatrixXd& w, Eigen::MatrixXd& h, long iters, double res, std::vector<double>& tr) {
    if (res < best.residual) {
      best.w = w;
      best.h = h;
      best.residual = res;
      best.iterations = iters;
      best.trace = std::move(tr);
    }
  };

  if (warm) {
    Eigen::MatrixXd w = warm->w, h = warm->h;
    const double start = relative_residual(a, w, h);
    std::vector<double> tr;
    const long iters = nmf_iterate(a, w, h, cfg, cfg.keep_trace ? &tr : nullptr);
    double res = relative_residual(a, w, h);
    if (!(res <= start) || !finite(w) || !finite(h)) {
      w = warm->w;
      h = warm->h;
      res = start;
    }
    best.restarts.push_back({-1, iters, res, true});
    consider(w, h, iters, res, tr);
  }

  for (long r = 0; r < cfg.restarts; ++r) {
    Eigen::MatrixXd w, h;
    std::vector<double> tr;
    long iters = 0;
    double res = std::numeric_limits<double>::infinity();
    for (long attempt = 0; attempt < 4; ++attempt) {
      auto rng = restart_rng(cfg.seed, cfg.rank, r, attempt);
      random_init(a, cfg.rank, rng, attempt == 0 ? 0.0 : 1e-3, w, h);
      tr.clear();
      iters = nmf_iterate(a, w, h, cfg, cfg.keep_trace ? &tr : nullptr);
      res = relative_residual(a, w, h);
      if (std::isfinite(res) && finite(w) && finite(h)) break;
      ++nonfinite;
    }
    best.restarts.push_back({r, iters, res, false});
    if (std::isfinite(res)) consider(w, h, iters, res, tr);
  }
  best.nonfinite_restarts = nonfinite;
  if (!std::isfinite(best.residual)) throw std::runtime_error("nmf_run: every restart diverged");
  return best;
}

ProbeResult upper_bound_probe(const Eigen::MatrixXd& a, long r_max, const NMFConfig& base, double threshold) {
  if (r_max < 1 || r_max > std::min(a.rows(), a.cols()))
    throw std::invalid_argument("upper_bound_probe: need 1 <= r_max <= matrix dimension");
  ProbeResult probe;
  probe.threshold = threshold;
  std::optional<FactorPair> prev;
  for (long r = 1; r <= r_max; ++r) {
    NMFConfig cfg = base;
    cfg.rank = r;
    FactorPair warm;
    const FactorPair* warm_ptr = nullptr;
    if (prev) {
      // Zero column in W keeps WH unchanged; the matching H row is random so
      // HALS can bring the new component in.
      warm.w = Eigen::MatrixXd::Zero(a.rows(), r);
      warm.w.leftCols(r - 1) = prev->w;
      warm.h.resize(r, a.cols());
      warm.h.topRows(r - 1) = prev->h;
      auto rng = restart_rng(base.seed, r, -1, 0);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double scale = std::sqrt(std::max(a.mean(), 0.0) / static_cast<double>(r));
      for (Eigen::Index j = 0; j < a.cols(); ++j) warm.h(r - 1, j) = scale * (1.0 - u(rng));
      warm_ptr = &warm;
    }
    FactorPair best = nmf_run(a, cfg, warm_ptr);
    probe.nonfinite_restarts += best.nonfinite_restarts;
    probe.curve.push_back({r, best.residual, best.restarts});
    if (!probe.threshold_rank && best.residual < threshold) probe.threshold_rank = r;
    prev = std::move(best);
  }
  return probe;
}

std::string probe_csv(const ProbeResult& probe) {
  std::ostringstream os;
  os << "r,restart,iterations,residual\n";
  char buf[64];
  for (const CurvePoint& p : probe.curve)
    for (const RestartRecord& rec : p.restarts) {
      std::snprintf(buf, sizeof buf, "%.17g", rec.residual);
      os << p.rank << ',' << rec.restart << ',' << rec.iterations << ',' << buf << '\n';
    }
  return os.str();
}

} // namespace nnrank
