#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "frogrange/bellpoly.hpp"
#include "oracles.hpp"

using namespace frogrange;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK(binomial(5, 7) == 0);
  CHECK_THROWS_AS(binomial(65, 1), std::domain_error);
}

TEST_CASE("small partial Bell values") {
  const std::vector<double> two{2.0};
  const std::vector<double> ones{1, 1, 1, 1, 1, 1};
  CHECK(partial_bell(3, 3, two) == 8.0);
  CHECK(partial_bell(3, 1, ones) == 1.0);
  CHECK(partial_bell(4, 2, ones) == 7.0);
  CHECK(partial_bell(6, 3, ones) == 90.0);
  CHECK_THROWS_AS(partial_bell(3, 0, ones), std::domain_error);
  CHECK_THROWS_AS(partial_bell(3, 4, ones), std::domain_error);
  CHECK_THROWS_AS(partial_bell(5, 1, two), std::domain_error);
}

TEST_CASE("small complete Bell values") {
  CHECK(complete_bell(1, std::vector<double>{5.0}) == 5.0);
  CHECK(complete_bell(2, std::vector<double>{1, 1}) == 2.0);
  CHECK(complete_bell(3, std::vector<double>{1, 1, 1}) == 5.0);
  CHECK_THROWS_AS(complete_bell(0, std::vector<double>{1.0}), std::domain_error);
  CHECK_THROWS_AS(complete_bell(3, std::vector<double>{1, 1}), std::domain_error);
}

TEST_CASE("recurrences agree with the partition sums") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(8);
    for (auto& v : x) v = u(gen);
    for (unsigned m = 1; m <= 8; ++m) {
      for (unsigned k = 1; k <= m; ++k) {
        const double expect = oracle::bell_by_partitions(m, x, k);
        CHECK(std::abs(partial_bell(m, k, x) - expect) <=
              1e-9 * std::max(1.0, std::abs(expect)));
      }
      const double expect = oracle::bell_by_partitions(m, x);
      const double scale = std::max(1.0, std::abs(expect));
      CHECK(std::abs(complete_bell(m, x) - expect) <= 1e-11 * scale);
      CHECK(std::abs(complete_bell_from_partials(m, x) - expect) <= 1e-11 * scale);
    }
  }
}

TEST_CASE("Bell numbers and the power identity") {
  const std::vector<double> ones(10, 1.0);
  const double bell_numbers[] = {1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (unsigned m = 1; m <= 10; ++m) CHECK(complete_bell(m, ones) == bell_numbers[m - 1]);
  for (double t : {-1.5, 0.0, 0.3, 2.0, 7.0}) {
    std::vector<double> x(12, 0.0);
    x[0] = t;
    for (unsigned m = 1; m <= 12; ++m) {
      CHECK(complete_bell(m, x) == doctest::Approx(std::pow(t, m)).epsilon(1e-14));
    }
  }
}

TEST_CASE("moments from cumulants of known laws") {
  const CumulantVector mean_only({3.5});
  CHECK(moments_from_cumulants(mean_only, 1) == 3.5);
  const CumulantVector two({1.2, 0.7});
  CHECK(moments_from_cumulants(two, 2) == doctest::Approx(1.2 * 1.2 + 0.7));
  // Poisson(l): every cumulant is l.
  CHECK(moments_from_cumulants(CumulantVector({1, 1, 1}), 3) == doctest::Approx(5.0));
  const double l = 1.7;
  const CumulantVector pois(std::vector<double>(5, l));
  CHECK(moments_from_cumulants(pois, 2) == doctest::Approx(l + l * l));
  CHECK(moments_from_cumulants(pois, 3) == doctest::Approx(l * l * l + 3 * l * l + l));
  // Normal(mu, s2): E X^4 = mu^4 + 6 mu^2 s2 + 3 s2^2.
  const double mu = 0.4, s2 = 2.5;
  const CumulantVector normal({mu, s2, 0.0, 0.0});
  CHECK(moments_from_cumulants(normal, 4) ==
        doctest::Approx(std::pow(mu, 4) + 6 * mu * mu * s2 + 3 * s2 * s2));
}

TEST_CASE("cumulant vector validation") {
  CHECK_THROWS_AS(CumulantVector({}), std::domain_error);
  CHECK_THROWS_AS(CumulantVector({1.0, std::nan("")}), std::domain_error);
  const CumulantVector k({1.0, 2.0});
  CHECK(k.kappa(2) == 2.0);
  CHECK_THROWS_AS(moments_from_cumulants(k, 3), std::domain_error);
  CHECK_THROWS_AS(moments_from_cumulants(k, 0), std::domain_error);
}
