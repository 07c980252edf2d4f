#include <sstream>

#include "doctest.h"
#include "ktypes/io.hpp"

using namespace ktypes;

namespace {

RunConfig sl2(Series s, long lambda, long box) {
  RunConfig c;
  c.group = "SL2R";
  c.series = s;
  if (s != Series::Principal) c.lambda = {Rational(lambda)};
  parse_eta_box(std::to_string(-box) + ":" + std::to_string(box), 1, c);
  return c;
}

std::string csv_of(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace

TEST_CASE("config round trip is byte identical") {
  RunConfig c = sl2(Series::Limit, 0, 7);
  c.chamber = QVec{Rational(-1)};
  c.chi = {make_rational(1, 2)};
  c.nu = {make_rational(3, 2)};
  c.seed = 12345678901234ULL;
  c.format = OutputFormat::Structured;
  c.out = "out dir/results.json";
  std::string text = serialize_config(c);
  CHECK(serialize_config(parse_config(text)) == text);
  RunConfig back = parse_config(text);
  CHECK(back.chamber == c.chamber);
  CHECK(back.chi == c.chi);
  CHECK(back.seed == c.seed);
  CHECK(back.eta_lo == std::vector<long>{-7});

  CHECK_THROWS_AS(parse_config("{ not json"), Error);
  CHECK_THROWS_AS(parse_config(R"({"series": "bogus"})"), Error);
  CHECK_THROWS_AS(parse_config(R"({"lambda": [true]})"), Error);
}

TEST_CASE("eta box parsing") {
  RunConfig c;
  parse_eta_box("10", 2, c);
  CHECK(c.eta_lo == std::vector<long>{-10, -10});
  CHECK(c.eta_hi == std::vector<long>{10, 10});
  parse_eta_box("-3:4,0:2", 2, c);
  CHECK(c.eta_lo == std::vector<long>{-3, 0});
  CHECK(c.eta_hi == std::vector<long>{4, 2});
  CHECK_THROWS_AS(parse_eta_box("1:2,3:4,5:6", 2, c), Error);
  CHECK_THROWS_AS(parse_eta_box("x", 1, c), Error);
}

TEST_CASE("sl2 tables") {
  Table d3 = compute_table(sl2(Series::Discrete, 3, 10));
  REQUIRE(d3.records.size() == 21);
  for (const auto& r : d3.records) {
    long l = r.eta[0].get_num().get_si();
    CAPTURE(l);
    CHECK(r.value == ((l == 4 || l == 6 || l == 8 || l == 10) ? 1 : 0));
    CHECK(r.oracle == r.value);
  }
  CHECK(d3.mismatches == 0);
  std::string csv = csv_of(d3);
  CHECK(csv.rfind("eta_1,multiplicity,method,residual\n", 0) == 0);
  CHECK(csv.find("\n4,1,point-criterion,") != std::string::npos);

  Table ps = compute_table(sl2(Series::Principal, 0, 4));
  REQUIRE(ps.records.size() == 9);
  for (const auto& r : ps.records) CHECK(r.value == (r.eta[0].get_num().get_si() % 2 == 0 ? 1 : 0));

  RunConfig empty = sl2(Series::Discrete, 3, 0);
  empty.eta_lo = {1};
  empty.eta_hi = {0};
  CHECK(compute_table(empty).records.empty());
}

TEST_CASE("tables are deterministic across worker counts") {
  RunConfig c;
  c.group = "SU(2,1)";
  c.lambda = {Rational(3), Rational(1)};
  parse_eta_box("-4:4", 2, c);
  TableOptions one;
  one.workers = 1;
  TableOptions many;
  many.workers = 4;
  Table a = compute_table(c, one);
  Table b = compute_table(c, many);
  REQUIRE_FALSE(a.records.empty());
  CHECK(csv_of(a) == csv_of(b));
  std::ostringstream sa, sb;
  write_structured(sa, a);
  write_structured(sb, b);
  CHECK(sa.str() == sb.str());
  // lexicographic order
  for (std::size_t i = 1; i < a.records.size(); ++i) CHECK(a.records[i - 1].eta < a.records[i].eta);
}

TEST_CASE("structured results carry the schema version and read back") {
  Table t = compute_table(sl2(Series::Discrete, 2, 5));
  std::ostringstream os;
  write_structured(os, t);
  std::string text = os.str();
  CHECK(text.find("\"schema_version\": " + std::to_string(kSchemaVersion)) != std::string::npos);
  // Unknown fields from a later writer are ignored.
  std::string future = text;
  future.insert(future.find('{') + 1, "\n  \"future_field\": [1, 2, 3],");
  Table back = read_structured(future);
  REQUIRE(back.records.size() == t.records.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    CHECK(back.records[i].eta == t.records[i].eta);
    CHECK(back.records[i].value == t.records[i].value);
    CHECK(back.records[i].method == t.records[i].method);
  }
  std::ostringstream again;
  write_structured(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("config errors") {
  RunConfig c = sl2(Series::Discrete, 0, 3);
  CHECK_THROWS_AS(compute_table(c), Error);  // singular lambda as discrete
  RunConfig lim = sl2(Series::Limit, 3, 3);
  CHECK_THROWS_AS(compute_table(lim), Error);
  RunConfig bad = sl2(Series::Discrete, 3, 3);
  bad.eta_lo = {0, 0};
  bad.eta_hi = {1, 1};
  try {
    compute_table(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
  }
}

TEST_CASE("image samples csv") {
  RunConfig c = sl2(Series::Discrete, 3, 1);
  MomentSetup s = make_moment_setup(params_from_config(c));
  ImageModel m = image_generators(s);
  std::ostringstream os;
  write_image_csv(os, s, m, {0.0, 0.5});
  std::string text = os.str();
  CHECK(text.rfind("generator,source,t,w_1,error\n", 0) == 0);
  CHECK(text.find("0,ray,0.5,") != std::string::npos);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5e-12) == "-2.5e-12");
}
