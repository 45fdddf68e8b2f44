#include "frogrange/qseries.hpp"

#include <array>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "frogrange/compensated_sum.hpp"

namespace frogrange {

namespace {

void require_unit_interval(double a, const char* what) {
  if (!(a >= 0.0 && a < 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1), got " +
                            std::to_string(a));
  }
}

void require_positive_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::domain_error("tolerance must be positive and finite");
  }
}

// sum_{n>=0} w(q^{n+z}) with w(u) = u / (1-u)^power; the tail after N terms is
// bounded by q^{N+z} / ((1-q)(1-q^{N+z})^power).
double lambert_type_sum(double z, QParam q, double scale, int power,
                        double tol) {
  const double qv = q.value();
  const double log_q = q.log();
  CompensatedSum sum;
  double u = std::exp(z * log_q);
  for (std::size_t n = 0;; ++n) {
    const double denom = power == 1 ? (1.0 - u) : (1.0 - u) * (1.0 - u);
    sum += u / denom;
    u *= qv;
    const double tail = scale * u / ((1.0 - qv) * denom);
    if (tail <= tol || u == 0.0) break;
  }
  return sum.value();
}

}  // namespace

QParam::QParam(double q) : q_(q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("q must lie in (0, 1), got " + std::to_string(q));
  }
}

double q_pochhammer_finite(double a, QParam q, std::size_t c) {
  require_unit_interval(a, "a");
  double product = 1.0;
  double term = a;
  for (std::size_t j = 0; j < c; ++j) {
    product *= 1.0 - term;
    term *= q.value();
  }
  return product;
}

SeriesValue log_q_pochhammer_inf(double a, QParam q, double tol) {
  require_unit_interval(a, "a");
  require_positive_tol(tol);
  if (a == 0.0) return {0.0, 0.0, 0};

  const double qv = q.value();
  CompensatedSum sum;
  double term = a;
  std::size_t j = 0;
  double tail = 0.0;
  for (;;) {
    tail = term / ((1.0 - qv) * (1.0 - term));
    if (tail <= tol) break;
    sum += std::log1p(-term);
    term *= qv;
    ++j;
  }
  return {sum.value(), tail, j};
}

double euler_series_inverse(double z, QParam q, std::size_t n_terms) {
  require_unit_interval(z, "z");
  if (n_terms == 0) {
    throw std::domain_error("euler_series_inverse needs at least one term");
  }
  // term_n = z^n / (q;q)_n, built incrementally.
  CompensatedSum sum;
  double term = 1.0;
  double qn = 1.0;
  for (std::size_t n = 0; n < n_terms; ++n) {
    sum += term;
    qn *= q.value();
    term *= z / (1.0 - qn);
  }
  return sum.value();
}

double q_gamma(double z, QParam q, double tol) {
  if (!(z > 0.0)) throw std::domain_error("q_gamma requires z > 0");
  const double numer = log_q_pochhammer_inf(q.value(), q, tol).log_value;
  const double denom =
      log_q_pochhammer_inf(std::exp(z * q.log()), q, tol).log_value;
  return std::exp(numer - denom + (1.0 - z) * std::log1p(-q.value()));
}

double q_digamma(double z, QParam q, double tol) {
  if (!(z > 0.0)) throw std::domain_error("q_digamma requires z > 0");
  require_positive_tol(tol);
  const double log_q = q.log();
  return -std::log1p(-q.value()) +
         log_q * lambert_type_sum(z, q, std::abs(log_q), 1, tol);
}

double q_digamma_derivative(double z, QParam q, double tol) {
  if (!(z > 0.0)) {
    throw std::domain_error("q_digamma_derivative requires z > 0");
  }
  require_positive_tol(tol);
  const double log_q2 = q.log() * q.log();
  return log_q2 * lambert_type_sum(z, q, log_q2, 2, tol);
}

double euler_function_log_asymptotic(QParam q) {
  const double t = -q.log();
  constexpr double pi = std::numbers::pi;
  return 0.5 * std::log(2.0 * pi / t) - pi * pi / (6.0 * t);
}

double zeta_int(int j) {
  if (j < 2) throw std::domain_error("zeta_int requires j >= 2");
  // Direct sum below N, Euler-Maclaurin for the remainder. With N = 128 the
  // first omitted correction is far below 1e-16 for every j >= 2.
  constexpr int N = 128;
  const double s = static_cast<double>(j);
  CompensatedSum sum;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);

  const double n = N;
  const double fN = std::pow(n, -s);
  sum += n * fN / (s - 1.0);  // integral from N to infinity
  sum += 0.5 * fN;
  // -B_{2p}/(2p)! f^{(2p-1)}(N) with f^{(r)}(N) = (-1)^r (s)_r N^{-s-r}
  constexpr std::array<double, 4> bernoulli = {1.0 / 6.0, -1.0 / 30.0,
                                               1.0 / 42.0, -1.0 / 30.0};
  double rising = s;  // (s)_{2p-1}
  double factorial = 2.0;
  double power = fN / n;
  for (std::size_t p = 0; p < bernoulli.size(); ++p) {
    sum += bernoulli[p] / factorial * rising * power;
    rising *= (s + 2.0 * p + 1.0) * (s + 2.0 * p + 2.0);
    factorial *= (2.0 * p + 3.0) * (2.0 * p + 4.0);
    power /= n * n;
  }
  return sum.value();
}

}  // namespace frogrange
