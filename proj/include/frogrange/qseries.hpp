#pragma once

#include <cmath>
#include <cstddef>

namespace frogrange {

inline constexpr double kDefaultTol = 1e-12;

/// Base of a q-series, restricted to the open interval (0, 1).
class QParam {
 public:
  explicit QParam(double q);

  double value() const { return q_; }
  double log() const { return std::log(q_); }

 private:
  double q_;
};

/// Natural log of a positive quantity together with a certified bound on the
/// absolute error of that log. log_value == -inf encodes an exact zero.
struct SeriesValue {
  double log_value = 0.0;
  double tail_bound = 0.0;
  std::size_t terms_used = 0;

  double value() const { return std::exp(log_value); }
};

/// (a; q)_c = prod_{j<c} (1 - a q^j). Empty product for c == 0.
double q_pochhammer_finite(double a, QParam q, std::size_t c);

/// log (a; q)_inf, truncated once the geometric tail bound
/// a q^J / ((1 - q)(1 - a q^J)) drops to tol.
SeriesValue log_q_pochhammer_inf(double a, QParam q, double tol = kDefaultTol);

/// Partial sum of sum_n z^n / (q; q)_n, which converges to 1 / (z; q)_inf.
double euler_series_inverse(double z, QParam q, std::size_t n_terms);

double q_gamma(double z, QParam q, double tol = kDefaultTol);

/// psi_q(z) = -ln(1-q) + ln q * sum_{n>=0} q^{n+z} / (1 - q^{n+z})
double q_digamma(double z, QParam q, double tol = kDefaultTol);

/// d psi_q / dz = ln^2 q * sum_{n>=0} q^{n+z} / (1 - q^{n+z})^2
double q_digamma_derivative(double z, QParam q, double tol = kDefaultTol);

/// Leading-order log of the Euler function (q; q)_inf as q -> 1:
/// (1/2) ln(2 pi / t) - pi^2 / (6 t), t = -ln q.
double euler_function_log_asymptotic(QParam q);

/// Riemann zeta at integers j >= 2, absolute error below 1e-14.
double zeta_int(int j);

}  // namespace frogrange
