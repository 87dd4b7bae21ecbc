#include "nnrank/io.hpp"

#include <openssl/evp.h>

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nnrank {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

long integer_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Rational rational_entry(const json& v) {
  if (!v.is_string()) fail("rational entries must be \"p/q\" strings");
  const std::string s = v.get<std::string>();
  Rational q;
  try {
    q = Rational::parse(s);
  } catch (const std::exception&) {
    fail("malformed rational '" + s + "'");
  }
  if (q.str() != s) fail("rational '" + s + "' is not in canonical p/q form");
  return q;
}

mpz_class parse_mpz(const std::string& s, int base, const char* what) {
  mpz_class z;
  if (s.empty() || z.set_str(s, base) != 0) fail(std::string("malformed ") + what + " '" + s + "'");
  return z;
}

long header_check(const json& j, const char* kind) {
  if (!j.is_object()) fail("matrix file must be a JSON object");
  if (integer_field(j, "schema_version") != kSchemaVersion) fail("unsupported schema_version");
  if (string_field(j, "kind") != kind) fail(std::string("expected kind ") + kind);
  const long rows = integer_field(j, "rows"), cols = integer_field(j, "cols");
  if (rows < 0 || cols < 0) fail("negative dimensions");
  const json& e = field(j, "entries");
  if (!e.is_array() || static_cast<long>(e.size()) != rows) fail("entries must have one array per row");
  for (const json& row : e)
    if (!row.is_array() || static_cast<long>(row.size()) != cols) fail("entry row has the wrong length");
  return rows;
}

json interval_to_json(const Interval& x) { return json::array({endpoint_to_json(x.lo()), endpoint_to_json(x.hi())}); }

Interval interval_from_json(const json& v, long prec) {
  if (!v.is_array() || v.size() != 2) fail("interval entries must be [lo, hi]");
  const BigFloat lo = endpoint_from_json(v[0]), hi = endpoint_from_json(v[1]);
  if (hi < lo) fail("interval entry has lo > hi");
  return Interval(lo, hi, prec);
}

long uniform_precision(const Matrix<Interval>& m, const std::vector<Interval>* extra) {
  long p = -1;
  auto take = [&](const Interval& x) {
    if (p < 0) p = x.precision();
    else if (x.precision() != p) throw std::invalid_argument("matrix_to_json: mixed interval precisions");
  };
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) take(m(i, j));
  if (extra)
    for (const Interval& x : *extra) take(x);
  return std::max(p, 0L);
}

template <class Scalar>
void check_shapes(const ConstructionBundle<Scalar>& b) {
  const long k = static_cast<long>(b.h.size());
  if (b.lambda.rows() != 3 || b.lambda.cols() != 3) fail("lambda must be 3x3");
  if (b.b.rows() != 2 * k || b.b.cols() != 3) fail("b must be 2k x 3 with k = number of h values");
  if (b.a.rows() != 2 * k || b.a.cols() != 2 * k) fail("a must be 2k x 2k");
  if (b.mode.k != k) fail("mode.k does not match the number of h values");
}

} // namespace

json mode_to_json(const ModeInfo& mode) {
  return {{"scalar_kind", to_string(mode.kind)},
          {"k", mode.k},
          {"h1", mode.h1.str()},
          {"surrogate_spec", mode.surrogate_spec},
          {"precision_bits", mode.precision_bits}};
}

ModeInfo mode_from_json(const json& j) {
  ModeInfo m;
  try {
    m.kind = scalar_kind_from_string(string_field(j, "scalar_kind"));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  m.k = integer_field(j, "k");
  m.h1 = rational_entry(field(j, "h1"));
  m.surrogate_spec = string_field(j, "surrogate_spec");
  m.precision_bits = integer_field(j, "precision_bits");
  return m;
}

json endpoint_to_json(const BigFloat& x) {
  const mpz_class mag = abs(x.mantissa());
  return {{"sign", x.sign()}, {"mantissa_hex", mag.get_str(16)}, {"exponent", x.exponent().get_str(10)}};
}

BigFloat endpoint_from_json(const json& j) {
  const long sign = integer_field(j, "sign");
  if (sign < -1 || sign > 1) fail("endpoint sign must be -1, 0 or 1");
  mpz_class mant = parse_mpz(string_field(j, "mantissa_hex"), 16, "mantissa_hex");
  const mpz_class exp = parse_mpz(string_field(j, "exponent"), 10, "exponent");
  if (mant < 0) fail("mantissa_hex must be unsigned");
  if ((sign == 0) != (mant == 0)) fail("endpoint sign disagrees with mantissa");
  if (sign < 0) mant = -mant;
  return BigFloat(mant, exp);
}

json matrix_to_json(const Matrix<Rational>& m, const ModeInfo& mode) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "exact-rational"}, {"rows", m.rows()},
          {"cols", m.cols()},                 {"mode", mode_to_json(mode)},  {"entries", std::move(rows)}};
}

json matrix_to_json(const Matrix<Interval>& m, const ModeInfo& mode) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(interval_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"schema_version", kSchemaVersion},
          {"kind", "bigfloat-interval"},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"precision_bits", uniform_precision(m, nullptr)},
          {"mode", mode_to_json(mode)},
          {"entries", std::move(rows)}};
}

std::string matrix_kind(const json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind != "exact-rational" && kind != "bigfloat-interval") fail("unknown matrix kind '" + kind + "'");
  return kind;
}

Matrix<Rational> rational_matrix_from_json(const json& j) {
  const long rows = header_check(j, "exact-rational");
  const long cols = integer_field(j, "cols");
  Matrix<Rational> m(rows, cols);
  const json& e = j.at("entries");
  for (long i = 0; i < rows; ++i)
    for (long c = 0; c < cols; ++c) m(i, c) = rational_entry(e[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
  return m;
}

Matrix<Interval> interval_matrix_from_json(const json& j) {
  const long rows = header_check(j, "bigfloat-interval");
  const long cols = integer_field(j, "cols");
  const long prec = integer_field(j, "precision_bits");
  if (prec < 0) fail("precision_bits must be nonnegative");
  Matrix<Interval> m(rows, cols);
  const json& e = j.at("entries");
  for (long i = 0; i < rows; ++i)
    for (long c = 0; c < cols; ++c)
      m(i, c) = interval_from_json(e[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], prec);
  return m;
}

std::string canonical_bytes(const json& j) { return j.dump() + "\n"; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

BundleDocuments bundle_documents(const AnyBundle& bundle) {
  return std::visit(
      [](const auto& b) {
        BundleDocuments d;
        d.lambda = matrix_to_json(b.lambda, b.mode);
        d.b = matrix_to_json(b.b, b.mode);
        json h = json::array();
        for (const auto& x : b.h) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Rational>) h.push_back(x.str());
          else {
            if (x.precision() != d.b["precision_bits"].template get<long>() && b.b.size() > 0)
              throw std::invalid_argument("bundle_documents: h precision differs from B");
            h.push_back(interval_to_json(x));
          }
        }
        d.b["h_values"] = std::move(h);
        d.a = matrix_to_json(b.a, b.mode);
        return d;
      },
      bundle);
}

AnyBundle bundle_from_documents(const BundleDocuments& docs) {
  const std::string kind = matrix_kind(docs.a);
  if (matrix_kind(docs.lambda) != kind || matrix_kind(docs.b) != kind) fail("bundle files disagree on kind");
  const ModeInfo mode = mode_from_json(field(docs.a, "mode"));
  if (mode_to_json(mode_from_json(field(docs.b, "mode"))) != mode_to_json(mode) ||
      mode_to_json(mode_from_json(field(docs.lambda, "mode"))) != mode_to_json(mode))
    fail("bundle files disagree on mode");
  const json& h = field(docs.b, "h_values");
  if (!h.is_array()) fail("h_values must be an array");

  if (kind == "exact-rational") {
    if (mode.kind != ScalarKind::SurrogateExact) fail("exact-rational files must carry surrogate mode");
    ExactBundle b;
    b.mode = mode;
    b.lambda = rational_matrix_from_json(docs.lambda);
    b.b = rational_matrix_from_json(docs.b);
    b.a = rational_matrix_from_json(docs.a);
    for (const json& v : h) b.h.push_back(rational_entry(v));
    check_shapes(b);
    return b;
  }
  if (mode.kind != ScalarKind::PaperInterval) fail("bigfloat-interval files must carry paper mode");
  IntervalBundle b;
  b.mode = mode;
  b.lambda = interval_matrix_from_json(docs.lambda);
  b.b = interval_matrix_from_json(docs.b);
  b.a = interval_matrix_from_json(docs.a);
  const long prec = integer_field(docs.b, "precision_bits");
  for (const json& v : h) b.h.push_back(interval_from_json(v, prec));
  check_shapes(b);
  return b;
}

std::string bundle_digest(const AnyBundle& bundle) {
  const BundleDocuments d = bundle_documents(bundle);
  return sha256_hex(canonical_bytes(d.lambda) + canonical_bytes(d.b) + canonical_bytes(d.a));
}

const ModeInfo& bundle_mode(const AnyBundle& bundle) {
  return std::visit([](const auto& b) -> const ModeInfo& { return b.mode; }, bundle);
}

std::string write_bundle(const std::filesystem::path& dir, const AnyBundle& bundle) {
  std::filesystem::create_directories(dir);
  const BundleDocuments d = bundle_documents(bundle);
  const std::string l = canonical_bytes(d.lambda), b = canonical_bytes(d.b), a = canonical_bytes(d.a);
  write_file_atomic(dir / "lambda.json", l);
  write_file_atomic(dir / "b.json", b);
  write_file_atomic(dir / "a.json", a);
  return sha256_hex(l + b + a);
}

AnyBundle read_bundle(const std::filesystem::path& dir) {
  BundleDocuments d;
  d.lambda = read_json_file(dir / "lambda.json");
  d.b = read_json_file(dir / "b.json");
  d.a = read_json_file(dir / "a.json");
  return bundle_from_documents(d);
}

json claim_to_json(const ClaimEntry& c) {
  return {{"id", c.id},
          {"verdict", to_string(c.verdict)},
          {"witness", c.witness},
          {"precision_bits", c.precision_bits},
          {"wall_seconds", c.wall_seconds}};
}

ClaimEntry claim_from_json(const json& j) {
  ClaimEntry c;
  c.id = string_field(j, "id");
  try {
    c.verdict = verdict_from_string(string_field(j, "verdict"));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  c.witness = field(j, "witness");
  c.precision_bits = integer_field(j, "precision_bits");
  const json& w = field(j, "wall_seconds");
  if (!w.is_number()) fail("wall_seconds must be a number");
  c.wall_seconds = w.get<double>();
  return c;
}

json bracket_to_json(const RankBracket& b) {
  json j = {{"linear_rank", b.linear_rank},
            {"lower", b.lower},
            {"lower_source", to_string(b.lower_source)},
            {"upper", b.upper},
            {"upper_source", to_string(b.upper_source)},
            {"gap", b.gap()},
            {"inconsistent", b.inconsistent}};
  j["nmf_residual"] = b.nmf_residual ? json(*b.nmf_residual) : json();
  j["pair_bound"] = b.pair_bound ? json(*b.pair_bound) : json();
  if (b.cover) {
    json rects = json::array();
    for (const Rectangle& r : b.cover->cover) {
      json rows = json::array(), cols = json::array();
      for (long x : r.rows) rows.push_back(x + 1);
      for (long x : r.cols) cols.push_back(x + 1);
      rects.push_back({{"rows", rows}, {"cols", cols}});
    }
    j["rectangle_cover"] = {{"value", b.cover->value},
                            {"timed_out", b.cover->timed_out},
                            {"best_upper", b.cover->best_upper},
                            {"nodes", b.cover->nodes},
                            {"maximal_rectangles", b.cover->maximal_rectangles},
                            {"cover", rects}};
  } else {
    j["rectangle_cover"] = json();
  }
  return j;
}

RankBracket bracket_from_json(const json& j) {
  RankBracket b;
  b.linear_rank = integer_field(j, "linear_rank");
  b.lower = integer_field(j, "lower");
  b.upper = integer_field(j, "upper");
  try {
    b.lower_source = lower_source_from_string(string_field(j, "lower_source"));
    b.upper_source = upper_source_from_string(string_field(j, "upper_source"));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  const json& flag = field(j, "inconsistent");
  if (!flag.is_boolean()) fail("inconsistent must be a boolean");
  b.inconsistent = flag.get<bool>();
  if (!field(j, "nmf_residual").is_null()) b.nmf_residual = j.at("nmf_residual").get<double>();
  if (!field(j, "pair_bound").is_null()) b.pair_bound = integer_field(j, "pair_bound");
  const json& rc = field(j, "rectangle_cover");
  if (!rc.is_null()) {
    CoverResult c;
    c.value = integer_field(rc, "value");
    c.timed_out = field(rc, "timed_out").get<bool>();
    c.best_upper = integer_field(rc, "best_upper");
    c.nodes = integer_field(rc, "nodes");
    c.maximal_rectangles = integer_field(rc, "maximal_rectangles");
    for (const json& r : field(rc, "cover")) {
      Rectangle rect;
      for (const json& x : field(r, "rows")) rect.rows.push_back(x.get<long>() - 1);
      for (const json& x : field(r, "cols")) rect.cols.push_back(x.get<long>() - 1);
      c.cover.push_back(std::move(rect));
    }
    b.cover = std::move(c);
  }
  return b;
}

json report_to_json(const ReportFile& r) {
  const CertificateReport& c = r.certificate;
  json claims = json::array(), timings = json::object();
  for (const ClaimEntry& e : c.claims) {
    claims.push_back(claim_to_json(e));
    timings[e.id] = e.wall_seconds;
  }
  timings["total"] = c.wall_seconds;
  json j = {{"schema_version", kSchemaVersion},
            {"tool_version", r.tool_version},
            {"bundle_digest", r.bundle_digest},
            {"mode", mode_to_json(c.mode)},
            {"claims", claims},
            {"overall", to_string(c.overall)},
            {"precision_trace", c.precision_trace},
            {"timings", timings}};
  j["inertia"] = c.inertia ? json{{"n_plus", c.inertia->n_plus}, {"n_minus", c.inertia->n_minus},
                                  {"n_zero", c.inertia->n_zero}}
                           : json();
  j["rank_bracket"] = r.bracket ? bracket_to_json(*r.bracket) : json();
  j["nmf"] = r.nmf;
  return j;
}

ReportFile report_from_json(const json& j) {
  if (!j.is_object()) fail("report must be a JSON object");
  if (integer_field(j, "schema_version") != kSchemaVersion) fail("unsupported report schema_version");
  ReportFile r;
  r.tool_version = string_field(j, "tool_version");
  r.bundle_digest = string_field(j, "bundle_digest");
  CertificateReport& c = r.certificate;
  c.mode = mode_from_json(field(j, "mode"));
  const json& claims = field(j, "claims");
  if (!claims.is_array()) fail("claims must be an array");
  for (const json& e : claims) c.claims.push_back(claim_from_json(e));
  try {
    c.overall = verdict_from_string(string_field(j, "overall"));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  for (const json& p : field(j, "precision_trace")) c.precision_trace.push_back(p.get<long>());
  const json& t = field(j, "timings");
  if (!t.is_object() || !t.contains("total")) fail("timings must contain total");
  c.wall_seconds = t.at("total").get<double>();
  const json& in = field(j, "inertia");
  if (!in.is_null())
    c.inertia = InertiaTriple{integer_field(in, "n_plus"), integer_field(in, "n_minus"), integer_field(in, "n_zero")};
  const json& br = field(j, "rank_bracket");
  if (!br.is_null()) r.bracket = bracket_from_json(br);
  r.nmf = field(j, "nmf");
  return r;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    fail(path.string() + ": " + e.what());
  }
}

} // namespace nnrank
