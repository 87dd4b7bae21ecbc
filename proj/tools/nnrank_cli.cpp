// nnrank: construct, certify and bound the nonnegative rank of the rank-3 family.
//
// Exit codes: 0 certified / ok, 1 falsified, 2 inconclusive, 3 precision
// exhausted, 4 unverified input to bounds, 64 usage, 65 unreadable input,
// 66 missing report.

#include "nnrank/bounds.hpp"
#include "nnrank/construction.hpp"
#include "nnrank/io.hpp"
#include "nnrank/nmf.hpp"
#include "nnrank/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace nnrank;
using json = nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kFalsified = 1,
  kInconclusive = 2,
  kPrecisionExhausted = 3,
  kUnverified = 4,
  kUsage = 64,
  kDataError = 65,
  kNoReport = 66,
};

struct Failure {
  int code;
  std::string message;
};

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Certified: return kOk;
    case Verdict::Falsified: return kFalsified;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

AnyBundle load_bundle(const fs::path& dir) {
  try {
    return read_bundle(dir);
  } catch (const ParseError& e) {
    throw Failure{kDataError, "cannot read bundle " + dir.string() + ": " + e.what()};
  }
}

fs::path report_path(const fs::path& in) { return fs::is_directory(in) ? in / "report.json" : in; }

std::optional<ReportFile> load_report(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  try {
    return report_from_json(read_json_file(path));
  } catch (const ParseError& e) {
    throw Failure{kDataError, "cannot read report " + path.string() + ": " + e.what()};
  }
}

void save_report(const fs::path& path, const ReportFile& r) { write_file_atomic(path, report_to_json(r).dump(2) + "\n"); }

std::string mode_summary(const ModeInfo& m) {
  std::ostringstream os;
  os << to_string(m.kind);
  if (m.kind == ScalarKind::PaperInterval) os << " h1=" << m.h1.str() << " precision=" << m.precision_bits;
  else os << " spec=" << m.surrogate_spec;
  return os.str();
}

std::string upper_text(const RankBracket& b) { return std::to_string(b.upper); }

std::string bracket_line(const RankBracket& b) {
  std::ostringstream os;
  os << "rank=" << (b.linear_rank > 0 ? std::to_string(b.linear_rank) : std::string("uncertified")) << ", rank_+ ∈ ["
     << b.lower << ", " << upper_text(b) << "] (lower: " << to_string(b.lower_source)
     << ", upper: " << to_string(b.upper_source) << ")";
  return os.str();
}

void print_claims(std::ostream& os, const CertificateReport& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-36s %-13s %10s %10s\n", "claim", "verdict", "precision", "seconds");
  os << buf;
  for (const ClaimEntry& e : c.claims) {
    std::snprintf(buf, sizeof buf, "%-36s %-13s %10ld %10.3f\n", e.id.c_str(), to_string(e.verdict).c_str(),
                  e.precision_bits, e.wall_seconds);
    os << buf;
  }
}

// Nonnegative-rank lower bound without running `bounds`: the bracket if
// stored, otherwise computed from the certificate.
std::optional<RankBracket> effective_bracket(const ReportFile& r) {
  if (r.bracket) return r.bracket;
  try {
    return rank_bracket(r.certificate.mode.k, r.certificate);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string headline(const ReportFile& r) {
  const CertificateReport& c = r.certificate;
  const ClaimEntry* rank = c.find("rank_three");
  const ClaimEntry* inertia = c.find("inertia");
  const auto bracket = effective_bracket(r);
  const bool rank_ok = rank && rank->verdict == Verdict::Certified;
  const bool inertia_ok = inertia && inertia->verdict == Verdict::Certified;
  if (!rank_ok || !inertia_ok || !bracket) {
    return std::string("not fully certified: rank ") + (rank ? to_string(rank->verdict) : "missing") + ", inertia " +
           (inertia ? to_string(inertia->verdict) : "missing") + ", overall " + to_string(c.overall);
  }
  return "rank = 3, one negative eigenvalue, nonnegative rank ≥ " + std::to_string(bracket->lower);
}

struct ConstructArgs {
  long k = 0;
  std::string mode = "surrogate";
  std::string h1 = "1/10";
  std::string surrogate_spec = "default";
  long precision_bits = 4096;
  std::string out;
};

int cmd_construct(const ConstructArgs& a) {
  if (a.k < 1) throw Failure{kUsage, "--k must be >= 1"};
  ScalarKind kind;
  try {
    kind = scalar_kind_from_string(a.mode);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsage, e.what()};
  }
  AnyBundle bundle;
  if (kind == ScalarKind::PaperInterval) {
    Rational h1;
    try {
      h1 = Rational::parse(a.h1);
    } catch (const std::exception&) {
      throw Failure{kUsage, "--h1 must be a rational p/q"};
    }
    if (h1.sign() <= 0 || !(h1 < Rational(1))) throw Failure{kUsage, "--h1 must lie in (0, 1)"};
    if (a.precision_bits < kMinPrecision) throw Failure{kUsage, "--precision-bits must be >= 32"};
    try {
      bundle = construct_paper(a.k, h1, a.precision_bits);
    } catch (const PrecisionExhausted& e) {
      throw Failure{kPrecisionExhausted,
                    "precision exhausted at h_" + std::to_string(e.index()) + ": " + e.what()};
    }
  } else {
    try {
      bundle = construct_surrogate(a.k, SurrogateSpec::parse(a.surrogate_spec));
    } catch (const std::invalid_argument& e) {
      throw Failure{kUsage, e.what()};
    }
  }
  const std::string digest = write_bundle(a.out, bundle);
  const ModeInfo& m = bundle_mode(bundle);
  std::cout << "A " << 2 * m.k << "x" << 2 * m.k << ", B " << 2 * m.k << "x3, mode " << mode_summary(m)
            << ", digest " << digest << "\n";
  return kOk;
}

struct VerifyArgs {
  std::string in;
  bool exhaustive_minors = false;
  long max_precision_bits = 0;
  std::uint64_t seed = VerifyOptions{}.seed;
};

int cmd_verify(const VerifyArgs& a) {
  const AnyBundle bundle = load_bundle(a.in);
  VerifyOptions opt;
  opt.exhaustive_minors = a.exhaustive_minors;
  opt.seed = a.seed;
  ReportFile report;
  report.bundle_digest = bundle_digest(bundle);
  if (const auto* exact = std::get_if<ExactBundle>(&bundle)) {
    report.certificate = full_verify(*exact, opt);
  } else {
    const auto& ib = std::get<IntervalBundle>(bundle);
    opt.max_precision_bits = std::max(a.max_precision_bits, ib.mode.precision_bits);
    report.certificate = verify_paper_with_retry(ib, opt);
  }
  save_report(fs::path(a.in) / "report.json", report);
  print_claims(std::cout, report.certificate);
  std::cout << "overall: " << to_string(report.certificate.overall) << "\n";
  for (const ClaimEntry& e : report.certificate.claims)
    if (e.verdict != Verdict::Certified) std::cout << to_string(e.verdict) << ": " << e.id << "\n";
  return verdict_exit(report.certificate.overall);
}

struct BoundsArgs {
  std::string in;
  bool rectangle_exact = false;
  long budget = 5'000'000;
};

int cmd_bounds(const BoundsArgs& a) {
  const AnyBundle bundle = load_bundle(a.in);
  const fs::path rp = report_path(a.in);
  auto report = load_report(rp);
  if (!report) throw Failure{kUnverified, "no report.json: run `verify` first"};
  if (report->bundle_digest != bundle_digest(bundle))
    throw Failure{kUnverified, "report.json does not belong to this bundle (digest mismatch)"};
  const long k = bundle_mode(bundle).k;
  if (a.rectangle_exact && 2 * k > 20) throw Failure{kUsage, "--rectangle-exact is limited to 2k <= 20"};
  if (a.budget < 1) throw Failure{kUsage, "--budget must be positive"};

  std::optional<CoverResult> cover;
  try {
    const SupportPattern p =
        std::visit([&](const auto& b) { return extract_pattern(b, report->certificate); }, bundle);
    if (a.rectangle_exact) cover = rectangle_cover_lower_bound(p, a.budget);
  } catch (const UnverifiedPattern& e) {
    throw Failure{kUnverified, e.what()};
  }
  std::optional<NmfUpper> nmf;
  if (report->nmf.is_object() && report->nmf.contains("threshold_rank") && !report->nmf["threshold_rank"].is_null())
    nmf = NmfUpper{report->nmf["threshold_rank"].get<long>(), report->nmf["threshold_residual"].get<double>()};

  report->bracket = rank_bracket(k, report->certificate, cover, nmf);
  save_report(rp, *report);
  std::cout << bracket_line(*report->bracket) << "\n";
  if (cover) {
    std::cout << "rectangle cover: " << cover->value << (cover->timed_out ? " (timed out, proven lower bound)" : " (exact)")
              << ", " << cover->maximal_rectangles << " maximal rectangles, " << cover->nodes << " nodes\n";
  }
  if (report->bracket->inconsistent) std::cout << "warning: numerical upper bound below certified lower bound\n";
  return kOk;
}

struct NmfArgs {
  std::string in;
  long rank = 0;
  long sweep = 0;
  long restarts = 20;
  std::uint64_t seed = 1;
  std::string csv;
  std::string algorithm = "hals";
  long max_iterations = 2000;
};

int cmd_nmf(const NmfArgs& a) {
  if ((a.rank > 0) == (a.sweep > 0)) throw Failure{kUsage, "give exactly one of --rank or --sweep"};
  if (a.restarts < 1) throw Failure{kUsage, "--restarts must be >= 1"};
  NMFConfig cfg;
  try {
    cfg.algorithm = nmf_algorithm_from_string(a.algorithm);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsage, e.what()};
  }
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;
  cfg.max_iterations = a.max_iterations;

  Eigen::MatrixXd ad;
  std::optional<AnyBundle> bundle;
  if (fs::is_directory(a.in)) {
    bundle = load_bundle(a.in);
    ad = std::visit([](const auto& b) { return to_double(b.a); }, *bundle);
  } else {
    try {
      const json doc = read_json_file(a.in);
      ad = matrix_kind(doc) == "exact-rational" ? to_double(rational_matrix_from_json(doc))
                                                : to_double(interval_matrix_from_json(doc));
    } catch (const ParseError& e) {
      throw Failure{kDataError, "cannot read matrix " + a.in + ": " + e.what()};
    }
  }
  if ((ad.array() < 0.0).any()) throw Failure{kDataError, "matrix has negative entries"};
  const long r_max = a.sweep > 0 ? a.sweep : a.rank;
  if (r_max > std::min(ad.rows(), ad.cols())) throw Failure{kUsage, "rank exceeds the matrix dimension"};

  ProbeResult probe;
  if (a.sweep > 0) {
    probe = upper_bound_probe(ad, a.sweep, cfg);
  } else {
    cfg.rank = a.rank;
    const FactorPair fp = nmf_run(ad, cfg);
    probe.curve.push_back({a.rank, fp.residual, fp.restarts});
    probe.nonfinite_restarts = fp.nonfinite_restarts;
    if (fp.residual < probe.threshold) probe.threshold_rank = a.rank;
  }

  if (!a.csv.empty()) write_file_atomic(a.csv, probe_csv(probe));
  json summary = {{"algorithm", to_string(cfg.algorithm)},
                  {"restarts", cfg.restarts},
                  {"seed", cfg.seed},
                  {"threshold", probe.threshold},
                  {"nonfinite_restarts", probe.nonfinite_restarts},
                  {"note", "double-rounded A; numerical evidence, not a certificate"}};
  json curve = json::array();
  for (const CurvePoint& p : probe.curve) curve.push_back({{"r", p.rank}, {"best_residual", p.best_residual}});
  summary["curve"] = curve;
  summary["threshold_rank"] = probe.threshold_rank ? json(*probe.threshold_rank) : json();
  summary["threshold_residual"] = json();
  if (probe.threshold_rank)
    for (const CurvePoint& p : probe.curve)
      if (p.rank == *probe.threshold_rank) summary["threshold_residual"] = p.best_residual;

  for (const CurvePoint& p : probe.curve) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "r=%ld residual=%.3e\n", p.rank, p.best_residual);
    std::cout << buf;
  }
  std::cout << "numerically exact at r = "
            << (probe.threshold_rank ? std::to_string(*probe.threshold_rank) : std::string("none")) << " (threshold "
            << probe.threshold << ")\n";

  if (bundle) {
    const fs::path rp = fs::path(a.in) / "report.json";
    auto report = load_report(rp);
    if (report && report->bundle_digest == bundle_digest(*bundle)) {
      report->nmf = summary;
      try {
        std::optional<NmfUpper> upper;
        if (probe.threshold_rank) upper = NmfUpper{*probe.threshold_rank, summary["threshold_residual"].get<double>()};
        const std::optional<CoverResult> cover = report->bracket ? report->bracket->cover : std::nullopt;
        report->bracket = rank_bracket(bundle_mode(*bundle).k, report->certificate, cover, upper);
        std::cout << bracket_line(*report->bracket) << "\n";
      } catch (const UnverifiedPattern&) {
        // No certified pattern: keep the curve, no bracket.
      }
      save_report(rp, *report);
    }
  }
  return kOk;
}

struct ReportArgs {
  std::string in;
  std::string format = "text";
};

int cmd_report(const ReportArgs& a) {
  const fs::path rp = report_path(a.in);
  const auto report = load_report(rp);
  if (!report) throw Failure{kNoReport, "no report at " + rp.string()};
  if (a.format == "json") {
    std::cout << report_to_json(*report).dump(2) << "\n";
    return kOk;
  }
  const CertificateReport& c = report->certificate;
  std::cout << "bundle " << report->bundle_digest << "\n";
  std::cout << "mode " << mode_summary(c.mode) << ", k = " << c.mode.k << "\n\n";
  print_claims(std::cout, c);
  std::cout << "\noverall: " << to_string(c.overall) << "\n";
  if (c.inertia)
    std::cout << "inertia (n+, n-, n0) = (" << c.inertia->n_plus << ", " << c.inertia->n_minus << ", "
              << c.inertia->n_zero << ")\n";
  else
    std::cout << "inertia: undecided\n";
  if (const auto b = effective_bracket(*report)) std::cout << bracket_line(*b) << "\n";
  if (!c.precision_trace.empty()) {
    std::cout << "precision trace:";
    for (long p : c.precision_trace) std::cout << ' ' << p;
    std::cout << "\n";
  }
  std::cout << headline(*report) << "\n";
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and certify rank-3 nonnegative matrices with large nonnegative rank"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build Lambda, B and A into a bundle directory");
  construct->add_option("--k", ca.k, "number of row pairs")->required();
  construct->add_option("--mode", ca.mode, "paper | surrogate");
  construct->add_option("--h1", ca.h1, "paper chain start p/q in (0,1)");
  construct->add_option("--surrogate-spec", ca.surrogate_spec, "default | list:q1,q2,...");
  construct->add_option("--precision-bits", ca.precision_bits, "interval precision (paper mode)");
  construct->add_option("--out", ca.out, "bundle directory")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "certify every claim and write report.json");
  verify->add_option("--in", va.in, "bundle directory")->required();
  verify->add_flag("--exhaustive-minors", va.exhaustive_minors, "check every principal 3x3 minor");
  verify->add_option("--max-precision-bits", va.max_precision_bits, "paper mode: retry ceiling");
  verify->add_option("--seed", va.seed, "seed for sampled checks");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "bracket the nonnegative rank of a verified bundle");
  bounds->add_option("--in", ba.in, "bundle directory")->required();
  bounds->add_flag("--rectangle-exact", ba.rectangle_exact, "exact rectangle cover (2k <= 20)");
  bounds->add_option("--budget", ba.budget, "branch-and-bound node limit");

  NmfArgs na;
  auto* nmf = app.add_subcommand("nmf", "numerical nonnegative factorization probe");
  nmf->add_option("--in", na.in, "bundle directory or matrix file")->required();
  auto* rank_opt = nmf->add_option("--rank", na.rank, "single target rank");
  auto* sweep_opt = nmf->add_option("--sweep", na.sweep, "ranks 1..r_max");
  rank_opt->excludes(sweep_opt);
  nmf->add_option("--restarts", na.restarts, "random restarts per rank");
  nmf->add_option("--seed", na.seed, "base seed");
  nmf->add_option("--csv", na.csv, "residual curve CSV");
  nmf->add_option("--algorithm", na.algorithm, "hals | mu");
  nmf->add_option("--max-iterations", na.max_iterations, "iterations per restart");

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "render report.json");
  report->add_option("--in", ra.in, "bundle directory or report file")->required();
  report->add_option("--format", ra.format, "json | text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) return cmd_construct(ca);
    if (*verify) return cmd_verify(va);
    if (*bounds) return cmd_bounds(ba);
    if (*nmf) return cmd_nmf(na);
    if (*report) return cmd_report(ra);
  } catch (const Failure& f) {
    std::cerr << "nnrank: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    std::cerr << "nnrank: " << e.what() << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "nnrank: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "nnrank: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}
