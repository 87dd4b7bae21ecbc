#pragma once

// JSON matrix files, bundle directories and report files.
//
// Entries never use JSON numbers: rationals are "p/q" strings, interval
// endpoints are {sign, mantissa_hex, exponent} with a decimal-string exponent.

#include "nnrank/bounds.hpp"
#include "nnrank/construction.hpp"
#include "nnrank/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace nnrank {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using AnyBundle = std::variant<ExactBundle, IntervalBundle>;

nlohmann::json mode_to_json(const ModeInfo& mode);
ModeInfo mode_from_json(const nlohmann::json& j);

nlohmann::json endpoint_to_json(const BigFloat& x);
BigFloat endpoint_from_json(const nlohmann::json& j);

/// MatrixFile documents. Interval matrices must share one precision.
nlohmann::json matrix_to_json(const Matrix<Rational>& m, const ModeInfo& mode);
nlohmann::json matrix_to_json(const Matrix<Interval>& m, const ModeInfo& mode);
Matrix<Rational> rational_matrix_from_json(const nlohmann::json& j);
Matrix<Interval> interval_matrix_from_json(const nlohmann::json& j);
/// "exact-rational" or "bigfloat-interval"; ParseError otherwise.
std::string matrix_kind(const nlohmann::json& j);

/// Canonical bytes: compact dump with sorted keys.
std::string canonical_bytes(const nlohmann::json& j);
std::string sha256_hex(const std::string& bytes);

struct BundleDocuments {
  nlohmann::json lambda, b, a;
};

BundleDocuments bundle_documents(const AnyBundle& bundle);
AnyBundle bundle_from_documents(const BundleDocuments& docs);
/// SHA-256 over the canonical bytes of lambda.json, b.json and a.json.
std::string bundle_digest(const AnyBundle& bundle);
const ModeInfo& bundle_mode(const AnyBundle& bundle);

/// Writes lambda.json, b.json, a.json; returns the digest.
std::string write_bundle(const std::filesystem::path& dir, const AnyBundle& bundle);
AnyBundle read_bundle(const std::filesystem::path& dir);

struct ReportFile {
  std::string tool_version = kToolVersion;
  std::string bundle_digest;
  CertificateReport certificate;
  std::optional<RankBracket> bracket;
  nlohmann::json nmf;  // null when no probe has run
};

nlohmann::json claim_to_json(const ClaimEntry& c);
ClaimEntry claim_from_json(const nlohmann::json& j);
nlohmann::json bracket_to_json(const RankBracket& b);
RankBracket bracket_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const ReportFile& r);
ReportFile report_from_json(const nlohmann::json& j);

/// Write to a temporary sibling, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
nlohmann::json read_json_file(const std::filesystem::path& path);

} // namespace nnrank
