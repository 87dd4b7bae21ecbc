#include "oracles.hpp"
#include "random_matrices.hpp"

#include "nnrank/io.hpp"

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace nnrank;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nnrank_io_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

} // namespace

TEST_CASE("endpoint encoding") {
  const BigFloat x(mpz_class(-255), mpz_class("-123456789012345678901234567890"));
  const auto j = endpoint_to_json(x);
  CHECK(j["sign"] == -1);
  CHECK(j["mantissa_hex"] == "ff");
  CHECK(j["exponent"] == "-123456789012345678901234567890");
  CHECK(endpoint_from_json(j) == x);
  CHECK(endpoint_from_json(endpoint_to_json(BigFloat())) == BigFloat());
  CHECK_THROWS_AS(endpoint_from_json({{"sign", 1}, {"mantissa_hex", "0"}, {"exponent", "0"}}), ParseError);
  CHECK_THROWS_AS(endpoint_from_json({{"sign", 1}, {"mantissa_hex", "zz"}, {"exponent", "0"}}), ParseError);
}

TEST_CASE("rational matrix round trip and strict entries") {
  const ExactBundle b = construct_surrogate(4);
  const auto j = matrix_to_json(b.a, b.mode);
  CHECK(j["kind"] == "exact-rational");
  CHECK(j["entries"][0][1] == "0/1");
  CHECK(rational_matrix_from_json(j) == b.a);
  auto bad = j;
  bad["entries"][0][0] = 3;
  CHECK_THROWS_AS(rational_matrix_from_json(bad), ParseError);
  bad = j;
  bad["entries"][0][0] = "2/4";
  CHECK_THROWS_AS(rational_matrix_from_json(bad), ParseError);
  bad = j;
  bad["rows"] = 3;
  CHECK_THROWS_AS(rational_matrix_from_json(bad), ParseError);
}

TEST_CASE("bundle directory round trip and digest") {
  const fs::path dir = scratch("bundle");
  const AnyBundle b = construct_paper(3, Rational(mpz_class(1), mpz_class(10)), 2048);
  const std::string digest = write_bundle(dir, b);
  CHECK(digest.size() == 64);
  CHECK(digest == bundle_digest(b));
  const AnyBundle back = read_bundle(dir);
  CHECK(bundle_digest(back) == digest);
  const auto& ib = std::get<IntervalBundle>(back);
  const auto& ob = std::get<IntervalBundle>(b);
  CHECK(ib.a == ob.a);
  CHECK(ib.b == ob.b);
  CHECK(ib.h == ob.h);
  CHECK(ib.mode.precision_bits == 2048);
  fs::remove_all(dir);
}

TEST_CASE("digest changes when any matrix entry changes") {
  ExactBundle b = construct_surrogate(3);
  const std::string d0 = bundle_digest(b);
  std::set<std::string> seen{d0};
  for (Eigen::Index i = 0; i < b.a.rows(); ++i) {
    ExactBundle t = b;
    t.a(i, 0) = t.a(i, 0) + Rational(1);
    CHECK(seen.insert(bundle_digest(t)).second);
  }
  ExactBundle t = b;
  t.lambda(0, 0) = Rational(2);
  CHECK(bundle_digest(t) != d0);
  CHECK(bundle_digest(b) == d0);
}

TEST_CASE("corrupt bundle files raise ParseError") {
  const fs::path dir = scratch("corrupt");
  write_bundle(dir, construct_surrogate(2));
  {
    std::ofstream out(dir / "a.json");
    out << "{ not json";
  }
  CHECK_THROWS_AS(read_bundle(dir), ParseError);
  fs::remove(dir / "a.json");
  CHECK_THROWS_AS(read_bundle(dir), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("report round trip") {
  ReportFile r;
  r.bundle_digest = "abc";
  r.certificate = full_verify(construct_surrogate(3));
  r.bracket = rank_bracket(3, r.certificate, rectangle_cover_lower_bound(SupportPattern::pair_pattern(3)));
  r.nmf = {{"threshold_rank", 4}};
  const auto j = report_to_json(r);
  const ReportFile back = report_from_json(nlohmann::json::parse(j.dump()));
  CHECK(report_to_json(back) == j);
  CHECK(back.certificate.overall == Verdict::Certified);
  CHECK(back.bracket->lower == r.bracket->lower);
  auto bad = j;
  bad["claims"][0]["verdict"] = "probably";
  CHECK_THROWS_AS(report_from_json(bad), ParseError);
}

TEST_CASE("atomic write leaves no temporary behind") {
  const fs::path dir = scratch("atomic");
  fs::create_directories(dir);
  write_file_atomic(dir / "x.txt", "hello");
  write_file_atomic(dir / "x.txt", "world");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
  std::ifstream in(dir / "x.txt");
  std::string s;
  in >> s;
  CHECK(s == "world");
  fs::remove_all(dir);
}

TEST_CASE("random matrices round trip bit-exactly") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto q = gen::random_rational_matrix(rng);
    CHECK(gen::round_trip(q, gen::random_mode(rng, false, 0)));
    const auto iv = gen::random_interval_matrix(rng);
    CHECK(gen::round_trip(iv, gen::random_mode(rng, true, iv(0, 0).precision())));
  }
}
