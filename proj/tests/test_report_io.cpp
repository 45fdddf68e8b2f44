#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "frogrange/report_io.hpp"

using namespace frogrange;

TEST_CASE("doubles print with round-trip precision") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.0) == "-0");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(std::nan("")) == "nan");
  std::mt19937_64 gen(5);
  for (int i = 0; i < 10000; ++i) {
    double v;
    const auto bits = gen();
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("emitted tables parse back to the same bytes") {
  CsvTable t({"x", "value", "name", "maybe"});
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (std::int64_t i = 0; i < 500; ++i) {
    CsvCell maybe = std::monostate{};
    if (i % 3 == 0) maybe = std::exp(u(gen) / 1e4);
    t.add_row({i - 250, u(gen) * std::pow(10.0, static_cast<double>(i % 40) - 20),
               std::string("q") + std::to_string(i), maybe});
  }
  t.add_row({std::int64_t{0}, -0.0, std::string("mean-ratio"), 1.0});
  t.add_row({std::int64_t{1}, std::numeric_limits<double>::infinity(), std::string("x"),
             std::nan("")});
  t.add_row({std::numeric_limits<std::int64_t>::min(), 1e-320, std::string("tiny"), 3.0});
  const auto text = t.emit();
  const auto parsed = CsvTable::parse(text);
  CHECK(parsed.emit() == text);
  CHECK(parsed.header() == t.header());
  CHECK(parsed.rows().size() == t.rows().size());
}

TEST_CASE("parsed cells take the obvious type") {
  const auto t = CsvTable::parse("a,b,c,d\n3,0.5,,word\n");
  const auto& row = t.rows().at(0);
  CHECK(std::get<std::int64_t>(row[0]) == 3);
  CHECK(std::get<double>(row[1]) == 0.5);
  CHECK(std::holds_alternative<std::monostate>(row[2]));
  CHECK(std::get<std::string>(row[3]) == "word");
}

TEST_CASE("row width must match the header") {
  CsvTable t({"a", "b"});
  CHECK_THROWS_AS(t.add_row({std::int64_t{1}}), std::invalid_argument);
  CHECK_THROWS_AS(CsvTable::parse("a,b\n1,2,3\n"), std::invalid_argument);
}

TEST_CASE("tables as JSON") {
  CsvTable t({"x", "v"});
  t.add_row({std::int64_t{2}, std::monostate{}});
  t.add_row({std::int64_t{3}, std::nan("")});
  t.add_row({std::int64_t{4}, 0.25});
  const auto j = t.to_json();
  CHECK(j.size() == 3);
  CHECK(j[0]["x"] == 2);
  CHECK(j[0]["v"].is_null());
  CHECK(j[1]["v"].is_null());
  CHECK(j[2]["v"] == 0.25);
}

TEST_CASE("simulation report as JSON") {
  SimReport r;
  r.sampler = "avalanche";
  r.replicas = 4;
  r.seed = 9;
  r.empirical_pmf = {{0, 1}, {2, 3}};
  r.moments = {{1, 1.5, 0.5}};
  r.wave_counts = std::map<std::uint64_t, std::uint64_t>{{1, 4}};
  const auto j = to_json(r);
  CHECK(j["sampler"] == "avalanche");
  CHECK(j["empirical_pmf"][1]["frequency"] == 0.75);
  CHECK(j["wave_counts"][0]["waves"] == 1);
  r.wave_counts.reset();
  CHECK_FALSE(to_json(r).contains("wave_counts"));
}
