#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "stagecert/report.hpp"

using namespace stagecert;

TEST_CASE("config files") {
  std::istringstream in("# comment\nsequence = 3, 40\n\nn_max=1\nprecision_bits = 80\nformat = csv\n");
  const RunConfig c = parse_config(in);
  CHECK(c.sequence == "3, 40");
  CHECK(c.precision_bits == 80);
  CHECK(c.format == "csv");
  CHECK(c.growth_sequence().at(2) == 40);
  std::istringstream bad1("n_max = zero\n"), bad2("colour = red\n"), bad3("just words\n");
  CHECK_THROWS_AS(parse_config(bad1), Error);
  CHECK_THROWS_AS(parse_config(bad2), Error);
  CHECK_THROWS_AS(parse_config(bad3), Error);
  CHECK_THROWS_AS(load_config("/nonexistent/file.conf"), Error);
  CHECK(parse_sequence("(2, 9)").at(2) == 9);
  CHECK(parse_sequence("desk-medium").at(1) == 3);
  CHECK_THROWS_AS(parse_sequence(""), Error);
  CHECK_THROWS_AS(parse_sequence("2,x"), Error);
}

TEST_CASE("precision from the environment overrides the file") {
  std::istringstream in("precision_bits = 80\n");
  RunConfig c = parse_config(in);
  setenv("BREAD_PRECISION_BITS", "100", 1);
  apply_environment(c);
  CHECK(c.precision_bits == 100);
  setenv("BREAD_PRECISION_BITS", "-3", 1);
  CHECK_THROWS_AS(apply_environment(c), Error);
  unsetenv("BREAD_PRECISION_BITS");
  apply_environment(c);
  CHECK(c.precision_bits == 100);
}

TEST_CASE("json encodings round trip") {
  const Rational q(BigInt(-7), BigInt(3));
  const auto j = report::rational(q);
  CHECK(j[0] == "-7");
  CHECK(j[1] == "3");
  CHECK(report::rational_from(j) == q);
  const AlgebraElement x = make_g().pow(3).scaled(q) + make_e(4);
  CHECK(report::element_from(report::element(x)) == x);
  const auto e = report::enclosure(Rational(1), Rational(2));
  CHECK(report::rational_from(e["hi"]) == 2);
}

TEST_CASE("reports are deterministic and the CSV has one row per stage metric") {
  RunConfig cfg;
  cfg.sequence = "desk-small";
  const auto a = report::build(cfg).dump();
  const auto b = report::build(cfg).dump();
  CHECK(a == b);
  const auto doc = report::json::parse(a);
  CHECK(doc["meta"]["version"] == report::kVersion);
  REQUIRE(doc["stages"].size() == 1);
  const std::string csv = report::to_csv(doc);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + doc["stages"].size() * report::csv_metrics().size());
}

TEST_CASE("unavailable stages carry a reason") {
  RunConfig cfg;
  cfg.sequence = "desk-small";
  cfg.n_max = 2;
  const auto doc = report::build(cfg);
  REQUIRE(doc["stages"].size() == 2);
  CHECK(doc["stages"][1]["status"] == "undecidable");
  CHECK_FALSE(doc["stages"][1]["reason"].get<std::string>().empty());
}
