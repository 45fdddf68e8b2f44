#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "frogrange/qseries.hpp"
#include "oracles.hpp"

using namespace frogrange;

TEST_CASE("QParam accepts only the open unit interval") {
  CHECK_THROWS_AS(QParam(0.0), std::domain_error);
  CHECK_THROWS_AS(QParam(1.0), std::domain_error);
  CHECK_THROWS_AS(QParam(-0.5), std::domain_error);
  CHECK_THROWS_AS(QParam(std::nan("")), std::domain_error);
  CHECK(QParam(0.25).value() == 0.25);
}

TEST_CASE("finite q-Pochhammer matches a plain product") {
  for (double a : {0.0, 0.3, 0.9}) {
    for (double q : {0.1, 0.5, 0.95}) {
      for (std::size_t c : {0u, 1u, 5u, 40u}) {
        const double expect = static_cast<double>(oracle::product(a, q, static_cast<long>(c)));
        CHECK(q_pochhammer_finite(a, QParam(q), c) == doctest::Approx(expect).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("Euler function agrees with the pentagonal number theorem") {
  // the alternating series cancels badly closer to 1
  for (double q : {0.05, 0.3, 0.5, 0.7, 0.8}) {
    const auto v = log_q_pochhammer_inf(q, QParam(q));
    const double expect = std::log(static_cast<double>(oracle::euler_function(q)));
    CHECK(v.log_value == doctest::Approx(expect).epsilon(1e-11));
    CHECK(std::abs(v.log_value - expect) <= v.tail_bound + 1e-11 * std::abs(expect));
  }
}

TEST_CASE("Euler function near 1 against a long product") {
  for (double q : {0.9, 0.95, 0.99}) {
    long double log_p = 0.0L;
    for (long j = 1; j < oracle::product_terms(q); ++j) log_p += std::log1p(-std::pow((long double)q, j));
    CHECK(log_q_pochhammer_inf(q, QParam(q)).log_value ==
          doctest::Approx(static_cast<double>(log_p)).epsilon(1e-12));
  }
}

TEST_CASE("infinite q-Pochhammer at general a") {
  CHECK_THROWS_AS(log_q_pochhammer_inf(-0.4, QParam(0.5)), std::domain_error);
  CHECK_THROWS_AS(log_q_pochhammer_inf(1.0, QParam(0.5)), std::domain_error);
  CHECK(log_q_pochhammer_inf(0.0, QParam(0.5)).log_value == 0.0);
  for (double a : {0.2, 0.6, 0.95}) {
    for (double q : {0.3, 0.8}) {
      const double expect =
          std::log(static_cast<double>(oracle::product(a, q, oracle::product_terms(q))));
      CHECK(log_q_pochhammer_inf(a, QParam(q)).log_value == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("tail bound shrinks with the tolerance") {
  const QParam q(0.9);
  const auto loose = log_q_pochhammer_inf(0.9, q, 1e-4);
  const auto tight = log_q_pochhammer_inf(0.9, q, 1e-14);
  CHECK(tight.tail_bound <= 1e-14);
  CHECK(loose.tail_bound <= 1e-4);
  CHECK(tight.terms_used > loose.terms_used);
  CHECK(std::abs(loose.log_value - tight.log_value) <= loose.tail_bound);
}

TEST_CASE("Euler series sums to the reciprocal Pochhammer") {
  for (double z : {0.1, 0.5, 0.8}) {
    for (double q : {0.3, 0.7}) {
      const double expect = std::exp(-log_q_pochhammer_inf(z, QParam(q)).log_value);
      CHECK(euler_series_inverse(z, QParam(q), 400) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("q-gamma functional equation and integer values") {
  for (double q : {0.2, 0.5, 0.9}) {
    const QParam qp(q);
    CHECK(q_gamma(1.0, qp) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q_gamma(2.0, qp) == doctest::Approx(1.0).epsilon(1e-12));
    double factorial = 1.0;
    for (int n = 1; n <= 6; ++n) {
      factorial *= (1.0 - std::pow(q, n)) / (1.0 - q);
      CHECK(q_gamma(n + 1.0, qp) == doctest::Approx(factorial).epsilon(1e-11));
    }
    for (double z : {0.3, 1.7, 4.2}) {
      const double bracket = (1.0 - std::pow(q, z)) / (1.0 - q);
      CHECK(q_gamma(z + 1.0, qp) == doctest::Approx(bracket * q_gamma(z, qp)).epsilon(1e-11));
    }
  }
}

TEST_CASE("q-digamma is the derivative of log q-gamma") {
  for (double q : {0.3, 0.6, 0.9}) {
    const QParam qp(q);
    for (double z : {0.7, 1.0, 2.5}) {
      const double h = 1e-5;
      const double fd = (std::log(q_gamma(z + h, qp)) - std::log(q_gamma(z - h, qp))) / (2 * h);
      CHECK(q_digamma(z, qp) == doctest::Approx(fd).epsilon(1e-7));
      const double fd2 = (q_digamma(z + h, qp) - q_digamma(z - h, qp)) / (2 * h);
      CHECK(q_digamma_derivative(z, qp) == doctest::Approx(fd2).epsilon(1e-6));
    }
  }
}

TEST_CASE("q-digamma tends to the classical digamma") {
  // psi(1) = -gamma, psi'(1) = pi^2/6
  const QParam qp(0.9999);
  CHECK(q_digamma(1.0, qp) == doctest::Approx(-0.5772156649015329).epsilon(1e-3));
  CHECK(q_digamma_derivative(1.0, qp) ==
        doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-3));
}

TEST_CASE("zeta at integers") {
  const double pi = std::numbers::pi;
  CHECK(zeta_int(2) == doctest::Approx(pi * pi / 6).epsilon(1e-15));
  CHECK(zeta_int(3) == doctest::Approx(1.2020569031595942).epsilon(1e-15));
  CHECK(zeta_int(4) == doctest::Approx(std::pow(pi, 4) / 90).epsilon(1e-15));
  CHECK(zeta_int(6) == doctest::Approx(std::pow(pi, 6) / 945).epsilon(1e-15));
  CHECK(zeta_int(40) == doctest::Approx(1.0 + std::pow(2.0, -40) + std::pow(3.0, -40)).epsilon(1e-15));
  CHECK_THROWS_AS(zeta_int(1), std::domain_error);
}

TEST_CASE("Euler asymptotic gets relatively closer as q -> 1") {
  double prev = 1.0;
  for (double q : {0.9, 0.99, 0.999}) {
    const QParam qp(q);
    const double exact = log_q_pochhammer_inf(q, qp).log_value;
    const double rel = std::abs(exact - euler_function_log_asymptotic(qp)) / std::abs(exact);
    CHECK(rel < prev);
    prev = rel;
  }
  CHECK(prev < 1e-6);
}
