#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "frogrange/model.hpp"

using namespace frogrange;

TEST_CASE("drift parameter") {
  const DriftParam d(0.5);
  CHECK(d.p() == doctest::Approx(2.0 / 3.0));
  CHECK(d.z_rho() == doctest::Approx(1.0));
  CHECK(DriftParam::from_p(0.8).rho() == doctest::Approx(0.25));
  CHECK(DriftParam(0.9).z_rho() == doctest::Approx(21.854345326782838));
  CHECK_THROWS_AS(DriftParam(0.0), std::domain_error);
  CHECK_THROWS_AS(DriftParam(1.0), std::domain_error);
  CHECK_THROWS_AS(DriftParam::from_p(0.5), std::domain_error);
  // Z = 2 exactly when rho^2 = 1 - rho
  const DriftParam golden((std::sqrt(5.0) - 1.0) / 2.0);
  CHECK(golden.z_rho() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("eta grammar") {
  const auto c = parse_eta_spec("const:3");
  CHECK(c.count_at(0) == 3);
  CHECK(c.count_at(1000) == 3);
  CHECK_FALSE(c.is_single_frog());
  CHECK(parse_eta_spec("const:1").is_single_frog());
  CHECK(parse_eta_spec("const:1") == FrogConfig::single_frog());

  const auto a = parse_eta_spec("arith:1,1");
  CHECK(a.count_at(0) == 1);
  CHECK(a.count_at(4) == 5);
  CHECK(a == FrogConfig::arithmetic(1, 1));

  const auto p = parse_eta_spec("prefix:[2,0,5];tail:zero");
  CHECK(p.count_at(0) == 2);
  CHECK(p.count_at(1) == 0);
  CHECK(p.count_at(2) == 5);
  CHECK(p.count_at(3) == 0);
  CHECK(p.delta_at(0) == 2);
  CHECK(p.delta_at(1) == -2);
  CHECK(p.delta_at(3) == -5);

  const auto q = parse_eta_spec("prefix:[1];tail:arith:2,3");
  CHECK(q.count_at(0) == 1);
  CHECK(q.count_at(1) == 5);
  CHECK(q.count_at(2) == 8);
}

TEST_CASE("specs round trip through to_spec") {
  for (const char* s : {"const:1", "const:7", "arith:1,1", "arith:4,0",
                        "prefix:[1,2,3];tail:zero", "prefix:[3];tail:const:2",
                        "prefix:[1,0];tail:arith:2,5"}) {
    CHECK(parse_eta_spec(s).to_spec() == s);
  }
}

TEST_CASE("malformed specs name the bad token") {
  auto message = [](const char* s) {
    try {
      parse_eta_spec(s);
    } catch (const SpecParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("const:x").find("'x'") != std::string::npos);
  CHECK(message("arith:3").find("'3'") != std::string::npos);
  CHECK(message("poisson:2").find("poisson") != std::string::npos);
  CHECK(message("zero") != "no error");
  CHECK(message("prefix:[1,2];tail:geo") .find("geo") != std::string::npos);
  CHECK(message("prefix:[1,];tail:zero") != "no error");
  CHECK(message("prefix:1,2;tail:zero") != "no error");
  CHECK(message("const:-1").find("'-1'") != std::string::npos);
}

TEST_CASE("configurations without a start are rejected") {
  CHECK_THROWS_AS(parse_eta_spec("const:0"), std::domain_error);
  CHECK_THROWS_AS(parse_eta_spec("arith:0,1"), std::domain_error);
  CHECK_THROWS_AS(parse_eta_spec("prefix:[0,0];tail:zero"), std::domain_error);
  CHECK_THROWS_AS(parse_eta_spec("prefix:[0];tail:const:1"), std::domain_error);
}

TEST_CASE("support on all of Z needs a constant count") {
  const auto z = parse_eta_spec("const:2", Support::AllOfZ);
  CHECK(z.uniform_count() == 2);
  CHECK(z.support() == Support::AllOfZ);
  CHECK_FALSE(z.is_single_frog());
  CHECK_THROWS_AS(parse_eta_spec("arith:1,1", Support::AllOfZ), std::domain_error);
  CHECK_THROWS_AS(parse_eta_spec("prefix:[1];tail:const:2", Support::AllOfZ),
                  std::domain_error);
  CHECK_THROWS_AS(parse_eta_spec("arith:1,1").uniform_count(), std::domain_error);
}

TEST_CASE("weighted tail closed form matches direct summation") {
  for (const char* s : {"const:3", "arith:2,3", "prefix:[4,0,1];tail:arith:1,2",
                        "prefix:[1,1,1,1];tail:zero"}) {
    const auto c = parse_eta_spec(s);
    for (double rho : {0.2, 0.7, 0.95}) {
      for (std::uint64_t from : {0u, 2u, 9u}) {
        long double direct = 0.0L;
        for (std::uint64_t k = from; k < 5000; ++k) {
          direct += c.count_at(k) * std::pow(static_cast<long double>(rho), k);
        }
        CHECK(c.weighted_tail(rho, from) ==
              doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
      }
    }
  }
}
