#pragma once

// Numerical nonnegative factorization A ~ W H in double precision. Heuristic
// evidence for the upper side of the bracket, never a certificate.

#include "nnrank/construction.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nnrank {

enum class NmfAlgorithm { MultiplicativeUpdates, HALS };

std::string to_string(NmfAlgorithm a);
NmfAlgorithm nmf_algorithm_from_string(const std::string& s);

/// Relative residual below which a fit counts as numerically exact.
constexpr double kNumericallyExact = 1e-9;
/// Floor inside multiplicative-update denominators.
constexpr double kMuFloor = 1e-15;

struct NMFConfig {
  long rank = 1;
  long max_iterations = 2000;
  long restarts = 5;
  std::uint64_t seed = 1;
  NmfAlgorithm algorithm = NmfAlgorithm::HALS;
  /// Stop when the relative residual changes by less than this between iterations.
  double tolerance = 1e-15;
  /// Stop as soon as the residual drops below this.
  double target = 0.0;
  bool keep_trace = false;
};

struct RestartRecord {
  long restart = 0;
  long iterations = 0;
  double residual = 0.0;
  bool warm = false;
};

struct FactorPair {
  Eigen::MatrixXd w, h;
  double residual = 0.0;  // ||A - WH||_F / ||A||_F
  long iterations = 0;
  std::vector<double> trace;  // residual after each iteration (best restart, if keep_trace)
  std::vector<RestartRecord> restarts;
  long nonfinite_restarts = 0;
};

/// A rounded to nearest double, entry by entry.
Eigen::MatrixXd to_double(const Matrix<Rational>& a);
Eigen::MatrixXd to_double(const Matrix<Interval>& a);

double relative_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& w, const Eigen::MatrixXd& h);

/// Iterates from the given factors in place; returns the iteration count.
long nmf_iterate(const Eigen::MatrixXd& a, Eigen::MatrixXd& w, Eigen::MatrixXd& h, const NMFConfig& cfg,
                 std::vector<double>* trace = nullptr);

/// Best of cfg.restarts random starts (plus `warm`, if given).
FactorPair nmf_run(const Eigen::MatrixXd& a, const NMFConfig& cfg, const FactorPair* warm = nullptr);

struct CurvePoint {
  long rank = 0;
  double best_residual = 0.0;
  std::vector<RestartRecord> restarts;
};

struct ProbeResult {
  std::vector<CurvePoint> curve;
  std::optional<long> threshold_rank;  // smallest r with residual < threshold
  double threshold = kNumericallyExact;
  long nonfinite_restarts = 0;
};

/// r = 1..r_max, each warm-started from r-1 padded with a zero column.
ProbeResult upper_bound_probe(const Eigen::MatrixXd& a, long r_max, const NMFConfig& base,
                              double threshold = kNumericallyExact);

/// Columns r, restart, iterations, residual.
std::string probe_csv(const ProbeResult& probe);

} // namespace nnrank
