#include "frogrange/range_bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "frogrange/compensated_sum.hpp"

namespace frogrange {

DeltaFn::DeltaFn(double alpha, bool allow_extension)
    : alpha_(alpha), allow_extension_(allow_extension) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in (0, 1)");
  }
}

double DeltaFn::domain_start() { return 1.0 - std::exp(-1.0); }

double DeltaFn::operator()(double rho) const {
  if (!in_domain(rho)) {
    if (allow_extension_) return kExtendedDelta;
    throw std::domain_error("delta(rho) is only defined for rho > 1 - 1/e, got " +
                            std::to_string(rho));
  }
  return std::pow(-std::log1p(-rho), -alpha_);
}

std::int64_t block_length(double value) {
  const auto k = static_cast<std::int64_t>(std::floor(value + 0.5));
  return std::max<std::int64_t>(k, 1);
}

double log_epsilon(const DriftParam& drift, std::uint64_t n, double tol) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  const QParam q(drift.rho());
  return static_cast<double>(n) *
         log_q_pochhammer_inf(drift.rho(), q, tol).log_value;
}

double log_theta(const DriftParam& drift, double delta, std::uint64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0, 1)");
  }
  const double span = drift.z_rho() * (1.0 - delta);
  if (span < 1.0) {
    throw std::domain_error("theta needs Z_rho (1 - delta) >= 1, got " +
                            std::to_string(span));
  }
  const std::int64_t k = block_length(span);
  CompensatedSum sum;
  for (std::int64_t j = 0; j < k; ++j) {
    sum += std::log1p(-std::exp(static_cast<double>(k + j) * drift.log_rho()));
  }
  return static_cast<double>(n) * sum.value();
}

GeometricMoment geometric_moment(double eps, unsigned m, double tol) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("geometric parameter must lie in (0, 1)");
  }
  if (m < 1) throw std::domain_error("moment order must be >= 1");
  const double log_fail = std::log1p(-eps);
  const auto md = static_cast<double>(m);
  CompensatedSum sum;
  for (std::int64_t k = 1;; ++k) {
    const double kd = static_cast<double>(k);
    sum += std::exp(md * std::log(kd) + kd * log_fail) * eps;
    const double next = kd + 1.0;
    const double r = std::pow(next / kd, md) * (1.0 - eps);
    if (r < 1.0) {
      const double tail =
          std::exp(md * std::log(next) + next * log_fail) * eps / (1.0 - r);
      if (tail <= tol * std::max(1.0, sum.value())) break;
    }
  }
  GeometricMoment g;
  g.exact = sum.value();
  g.asymptotic = std::exp(std::lgamma(md + 1.0) - md * std::log(eps));
  g.ratio = g.exact / g.asymptotic;
  return g;
}

LogBound phi_upper(const DriftParam& drift, std::uint64_t n, unsigned m,
                   double tol) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  constexpr double pi = std::numbers::pi;
  const auto md = static_cast<double>(m);
  const auto nd = static_cast<double>(n);
  const double one_minus = 1.0 - drift.rho();
  const double log_z = std::log(drift.z_rho());
  LogBound b;
  b.asymptotic = md * log_z + 0.5 * nd * std::log(one_minus / (2.0 * pi)) +
                 pi * pi / 6.0 * md * nd / one_minus;
  b.pre_asymptotic = md * log_z - md * log_epsilon(drift, n, tol);
  return b;
}

LowerBound psi_lower(const DriftParam& drift, std::uint64_t n, unsigned m,
                     const DeltaFn& delta) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (m < 1) throw std::domain_error("moment order must be >= 1");
  const double d = delta(drift.rho());
  const auto md = static_cast<double>(m);
  const auto nd = static_cast<double>(n);
  const double log_one_minus = std::log1p(-drift.rho());
  const double common = std::lgamma(md + 1.0) + md * std::log(drift.z_rho());
  LowerBound b;
  b.delta = d;
  b.asymptotic = common + md * nd * std::exp(-d * log_one_minus);
  b.remark_form = common + md * nd * std::exp(std::pow(-log_one_minus,
                                                       1.0 - delta.alpha()));
  if (drift.z_rho() * (1.0 - d) >= 1.0) {
    b.pre_asymptotic_defined = true;
    b.pre_asymptotic =
        common - md * log_theta(drift, d, n) + md * std::log1p(-d);
  }
  return b;
}

double remark_p_far(const DriftParam& drift, double delta, double tol) {
  if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
  const double rho = drift.rho();
  const double a = std::exp((1.0 + delta) * std::log1p(-rho)) * rho;
  return log_q_pochhammer_inf(a, QParam(rho), tol).value();
}

double remark_q_near(const DriftParam& drift, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0, 1)");
  }
  const double rho = drift.rho();
  const std::int64_t k = block_length(drift.z_rho() * (1.0 - delta));
  const double a = std::exp((1.0 - delta) * std::log1p(-rho));
  return q_pochhammer_finite(a, QParam(rho), static_cast<std::size_t>(k));
}

RemarkProbabilities remark_probabilities(const DriftParam& drift, double delta,
                                         double tol) {
  return {remark_p_far(drift, delta, tol), remark_q_near(drift, delta)};
}

}  // namespace frogrange
