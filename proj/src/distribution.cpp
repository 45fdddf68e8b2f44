#include "frogrange/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "frogrange/compensated_sum.hpp"

namespace frogrange {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_nonneg_support(const FrogConfig& config) {
  if (config.support() != Support::NonnegativeOnly) {
    throw std::domain_error(
        "closed-form law only covers nonnegative-support configurations");
  }
}

double rho_pow(const DriftParam& drift, double k) {
  return std::exp(k * drift.log_rho());
}

double stop_scale(double partial_sum) {
  return std::max(1.0, std::abs(partial_sum));
}

// (x+1)^m - x^m without cancellation.
double forward_power_difference(double x, unsigned m) {
  double acc = 0.0;
  double xp = 1.0;
  for (unsigned j = 0; j < m; ++j) {
    acc += static_cast<double>(binomial(m, j)) * xp;
    xp *= x;
  }
  return acc;
}

// Bound on sum_{u >= start} u^power rho^u, or +inf if the ratio test has not
// kicked in yet at `start`.
double power_geometric_tail(const DriftParam& drift, double start,
                            unsigned power) {
  const double r =
      std::pow((start + 1.0) / start, static_cast<double>(power)) * drift.rho();
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  const double head =
      std::exp(power * std::log(start) + start * drift.log_rho());
  return head / (1.0 - r);
}

}  // namespace

// ---------------------------------------------------------------------------
// RangeDistribution

RangeDistribution::RangeDistribution(DriftParam drift, FrogConfig config,
                                     double tol)
    : drift_(drift), config_(std::move(config)), tol_(tol) {
  require_nonneg_support(config_);
  if (!(tol_ > 0.0)) throw std::domain_error("tolerance must be positive");
  weighted_mass_ = config_.weighted_tail(drift_.rho(), 0);
  // Start where the survival bound is negligible in double precision.
  const double target = 1e-20 * (1.0 - drift_.rho()) / weighted_mass_;
  const double x0 = std::log(target) / drift_.log_rho();
  rebuild(std::max<std::int64_t>(64, static_cast<std::int64_t>(std::ceil(x0))));
}

void RangeDistribution::rebuild(std::int64_t top) const {
  const auto& prefix = config_.prefix();
  const auto len = static_cast<std::int64_t>(prefix.size());
  const double one_minus = 1.0 - drift_.rho();

  // tail(x) = sum_{k>=L} eta_k ln(1 - rho^{x+k+1}) = c1 S1(y) + c2 S2(y),
  // y = x + L + 1, S1(y) = sum_j ln(1 - rho^{y+j}), S2(y) = sum_j j ln(...).
  double c1 = 0.0;
  double c2 = 0.0;
  if (const auto* c = std::get_if<ConstantTail>(&config_.tail())) {
    c1 = static_cast<double>(c->n);
  } else if (const auto* a = std::get_if<ArithmeticTail>(&config_.tail())) {
    c1 = static_cast<double>(a->a + a->b * static_cast<std::uint64_t>(len));
    c2 = static_cast<double>(a->b);
  }

  const std::int64_t y_top = top + len + 1;
  CompensatedSum s1;
  CompensatedSum s2;
  if (c1 != 0.0 || c2 != 0.0) {
    // Direct sums at the far end, where every term is tiny.
    double u = rho_pow(drift_, static_cast<double>(y_top));
    for (std::int64_t j = 0; u > 0.0; ++j) {
      const double term = std::log1p(-u);
      s1 += term;
      s2 += static_cast<double>(j) * term;
      u *= drift_.rho();
      const double jn = static_cast<double>(j + 1);
      const double rest1 = u / ((1.0 - u) * one_minus);
      const double rest2 = u / (1.0 - u) *
                           (jn / one_minus + drift_.rho() / (one_minus * one_minus));
      const double size = c1 * std::abs(s1.value()) + c2 * std::abs(s2.value());
      if (c1 * rest1 + c2 * rest2 <= 1e-17 * size) break;
    }
  }

  std::vector<double> table(static_cast<std::size_t>(top) + 1);
  for (std::int64_t x = top; x >= 0; --x) {
    const std::int64_t y = x + len + 1;
    if (y < y_top) {
      s2 += s1.value();  // S2(y) = S2(y+1) + S1(y+1)
      s1 += std::log1p(-rho_pow(drift_, static_cast<double>(y)));
    }
    double value = c1 * s1.value() + c2 * s2.value();
    for (std::int64_t k = 0; k < len; ++k) {
      if (prefix[k] == 0) continue;
      value += static_cast<double>(prefix[k]) *
               std::log1p(-rho_pow(drift_, static_cast<double>(x + k + 1)));
    }
    table[static_cast<std::size_t>(x)] = value;
  }
  log_cdf_ = std::move(table);
}

void RangeDistribution::ensure(std::int64_t x) const {
  std::unique_lock lock(mutex_);
  const auto size = static_cast<std::int64_t>(log_cdf_.size());
  if (x < size) return;
  rebuild(std::max(x, 2 * size));
}

double RangeDistribution::lookup(std::int64_t x) const {
  if (x < 0) return kNegInf;
  std::int64_t size = 0;
  {
    std::shared_lock lock(mutex_);
    size = static_cast<std::int64_t>(log_cdf_.size());
    if (x < size) return log_cdf_[static_cast<std::size_t>(x)];
  }
  if (x > 4 * size + 1024) return general_log_cdf(drift_, config_, x, tol_);
  ensure(x);
  std::shared_lock lock(mutex_);
  return log_cdf_[static_cast<std::size_t>(x)];
}

std::int64_t RangeDistribution::tabulated_up_to() const {
  std::shared_lock lock(mutex_);
  return static_cast<std::int64_t>(log_cdf_.size()) - 1;
}

double RangeDistribution::log_cdf(std::int64_t x) const { return lookup(x); }

double RangeDistribution::cdf(std::int64_t x) const {
  return std::exp(lookup(x));
}

double RangeDistribution::survival(std::int64_t x) const {
  return -std::expm1(lookup(x));
}

double RangeDistribution::log_pmf(std::int64_t x) const {
  if (x < 0) return kNegInf;
  const double here = lookup(x);
  if (x == 0) return here;
  const double below = lookup(x - 1);
  return here + std::log(-std::expm1(below - here));
}

double RangeDistribution::pmf(std::int64_t x) const {
  return std::exp(log_pmf(x));
}

double RangeDistribution::survival_bound(std::int64_t x) const {
  if (x < 0) return 1.0;
  const double u = rho_pow(drift_, static_cast<double>(x + 1));
  return std::min(1.0, u * weighted_mass_ / (1.0 - u));
}

double RangeDistribution::moment_by_survival(unsigned m) const {
  if (m < 1) throw std::domain_error("moment order must be >= 1");
  const double scale = weighted_mass_ / (1.0 - drift_.rho());
  CompensatedSum sum;
  for (std::int64_t x = 0;; ++x) {
    const double xd = static_cast<double>(x);
    sum += forward_power_difference(xd, m) * survival(x);
    // sum_{x' > x} ((x'+1)^m - x'^m) P(X > x')
    //   <= m * H / (1 - rho) * sum_{u >= x+2} u^{m-1} rho^u
    const double tail =
        m * scale * power_geometric_tail(drift_, xd + 2.0, m - 1);
    if (tail <= tol_ * stop_scale(sum.value())) break;
  }
  return sum.value();
}

double RangeDistribution::moment_by_pmf(unsigned m) const {
  if (m < 1) throw std::domain_error("moment order must be >= 1");
  const double scale = weighted_mass_ / (1.0 - drift_.rho());
  CompensatedSum sum;
  for (std::int64_t x = 1;; ++x) {
    const double xd = static_cast<double>(x);
    sum += std::pow(xd, static_cast<double>(m)) * pmf(x);
    // P(X = x') <= P(X > x'-1) <= H rho^{x'} / (1 - rho)
    const double tail = scale * power_geometric_tail(drift_, xd + 1.0, m);
    if (tail <= tol_ * stop_scale(sum.value())) break;
  }
  return sum.value();
}

// ---------------------------------------------------------------------------
// Single frog per nonnegative site

double single_log_cdf(const DriftParam& drift, std::int64_t x, double tol) {
  if (x < 0) return kNegInf;
  const QParam q(drift.rho());
  return log_q_pochhammer_inf(rho_pow(drift, static_cast<double>(x + 1)), q,
                              tol)
      .log_value;
}

double single_cdf(const DriftParam& drift, std::int64_t x, double tol) {
  return std::exp(single_log_cdf(drift, x, tol));
}

double single_pmf(const DriftParam& drift, std::int64_t x, double tol) {
  if (x < 0) return 0.0;
  return std::exp(static_cast<double>(x) * drift.log_rho() +
                  single_log_cdf(drift, x, tol));
}

ModeBounds mode_bounds(const DriftParam& drift) {
  const double log_rho = drift.log_rho();
  const double log_one_minus = std::log1p(-drift.rho());
  ModeBounds b;
  b.lo_unfloored = (log_one_minus - log_rho) / log_rho;
  b.hi_unfloored = (log_one_minus - std::log(2.0 - drift.rho())) / log_rho;
  b.lo = static_cast<std::int64_t>(std::floor(b.lo_unfloored));
  b.hi = static_cast<std::int64_t>(std::floor(b.hi_unfloored));
  return b;
}

std::int64_t mode_exact(const DriftParam& drift, double /*tol*/) {
  // The PMF ratio P(x)/P(x-1) = rho / (1 - rho^x) is exact, so the scan walks
  // log P(x) - log P(0) instead of re-evaluating the infinite product.
  const std::int64_t limit = std::max<std::int64_t>(mode_bounds(drift).hi, 0) + 64;
  std::int64_t best = 0;
  double best_value = 0.0;
  double value = 0.0;
  for (std::int64_t x = 1; x <= limit; ++x) {
    value += drift.log_rho() -
             std::log1p(-rho_pow(drift, static_cast<double>(x)));
    if (value > best_value) {
      best_value = value;
      best = x;
    }
  }
  return best;
}

double cumulant(const DriftParam& drift, unsigned m, double tol) {
  if (m < 1) throw std::domain_error("cumulant order must be >= 1");
  const double log_rho = drift.log_rho();
  const double one_minus = 1.0 - drift.rho();
  const auto power = static_cast<double>(m - 1);
  CompensatedSum sum;
  for (std::int64_t k = 1;; ++k) {
    const double kd = static_cast<double>(k);
    sum += std::exp(power * std::log(kd) + kd * log_rho) /
           -std::expm1(kd * log_rho);
    const double tail = power_geometric_tail(drift, kd + 1.0, m - 1) / one_minus;
    if (tail <= tol * stop_scale(sum.value())) break;
  }
  return sum.value();
}

CumulantVector cumulants(const DriftParam& drift, unsigned count, double tol) {
  std::vector<double> kappa;
  kappa.reserve(count);
  for (unsigned m = 1; m <= count; ++m) kappa.push_back(cumulant(drift, m, tol));
  return CumulantVector(std::move(kappa));
}

double cgf(const DriftParam& drift, double t, double tol) {
  const double c = std::exp(t);
  if (!(c * drift.rho() < 1.0)) {
    throw std::domain_error("cgf needs e^t rho < 1");
  }
  const double one_minus = 1.0 - drift.rho();
  const double cmax = std::max(c, 1.0);
  CompensatedSum sum;
  double u = drift.rho();
  for (std::int64_t k = 1;; ++k) {
    sum += std::log1p(-u) - std::log1p(-c * u);
    u = rho_pow(drift, static_cast<double>(k + 1));
    const double tail = std::abs(c - 1.0) * u / (one_minus * (1.0 - cmax * u));
    if (tail <= tol) break;
  }
  return sum.value();
}

double scaled_mgf(const DriftParam& drift, double z, double tol) {
  if (!(z > 0.0)) throw std::domain_error("scaled_mgf needs z > 0");
  return std::exp(cgf(drift, std::log(z) / drift.z_rho(), tol));
}

MomentReport moment(const DriftParam& drift, unsigned m, double tol) {
  if (m < 1) throw std::domain_error("moment order must be >= 1");
  const RangeDistribution law(drift, FrogConfig::single_frog(), tol);
  MomentReport r;
  r.m = m;
  r.exact = law.moment_by_pmf(m);
  r.via_bell = moments_from_cumulants(cumulants(drift, m, tol), m);
  r.asymptotic = std::pow(drift.z_rho(), static_cast<double>(m));
  r.ratio_exact_over_asymptotic = r.exact / r.asymptotic;
  return r;
}

MeanVariance mean_variance_closed_form(const DriftParam& drift, double tol) {
  const QParam q(drift.rho());
  const double log_rho = drift.log_rho();
  MeanVariance mv;
  mv.mean = (q_digamma(1.0, q, tol * std::abs(log_rho)) +
             std::log1p(-drift.rho())) /
            log_rho;
  mv.variance =
      q_digamma_derivative(1.0, q, tol * log_rho * log_rho) / (log_rho * log_rho);
  return mv;
}

double cumulant_asymptotic(const DriftParam& drift, unsigned j) {
  if (j == 0) return drift.z_rho();
  double factorial = 1.0;
  for (unsigned i = 2; i <= j; ++i) factorial *= i;
  return factorial * zeta_int(static_cast<int>(j) + 1) /
         std::pow(-drift.log_rho(), static_cast<double>(j + 1));
}

// ---------------------------------------------------------------------------
// General nonnegative configurations

double general_log_cdf(const DriftParam& drift, const FrogConfig& config,
                       std::int64_t x, double tol) {
  require_nonneg_support(config);
  if (x < 0) return kNegInf;
  const double rho = drift.rho();
  const double head = rho_pow(drift, static_cast<double>(x + 1));
  const auto len = static_cast<std::uint64_t>(config.prefix().size());
  const bool finite = std::holds_alternative<ZeroTail>(config.tail());
  CompensatedSum sum;
  double u = head;  // rho^{x+k+1}
  for (std::uint64_t k = 0;; ++k) {
    if (finite && k >= len) break;
    const auto eta = config.count_at(k);
    if (eta != 0) sum += static_cast<double>(eta) * std::log1p(-u);
    u *= rho;
    if (k + 1 >= len) {
      // |sum_{k' > k} eta_k' ln(1 - rho^{x+k'+1})|
      //   <= rho^{x+1} / (1 - rho^{x+k+2}) * sum_{k' > k} eta_k' rho^k'
      // Every term has the same sign, so a relative stop keeps tiny
      // log-CDF values (deep in the tail) accurate.
      const double rest = head / (1.0 - u) * config.weighted_tail(rho, k + 1);
      if (rest <= tol * std::abs(sum.value())) break;
    }
  }
  return sum.value();
}

double general_cdf(const DriftParam& drift, const FrogConfig& config,
                   std::int64_t x, double tol) {
  return std::exp(general_log_cdf(drift, config, x, tol));
}

double general_pmf(const DriftParam& drift, const FrogConfig& config,
                   std::int64_t x, double tol) {
  if (x < 0) {
    require_nonneg_support(config);
    return 0.0;
  }
  const double here = general_log_cdf(drift, config, x, tol);
  if (x == 0) return std::exp(here);
  const double below = general_log_cdf(drift, config, x - 1, tol);
  return std::exp(here) * -std::expm1(below - here);
}

double general_pmf_delta_form(const DriftParam& drift, const FrogConfig& config,
                              std::int64_t x, double tol) {
  require_nonneg_support(config);
  if (x < 0) return 0.0;
  const double cdf_here = general_cdf(drift, config, x, tol);
  if (x == 0) return cdf_here;  // the k = 0 factor (1 - rho^0)^{eta_0} is 0
  const auto len = static_cast<std::uint64_t>(config.prefix().size());
  // Delta_k is zero past the prefix except for arithmetic tails, where it is b.
  CompensatedSum log_ratio;
  for (std::uint64_t k = 0; k <= len; ++k) {
    const auto d = config.delta_at(k);
    if (d != 0) {
      log_ratio += static_cast<double>(d) *
                   std::log1p(-rho_pow(drift, static_cast<double>(x) + k));
    }
  }
  if (const auto* a = std::get_if<ArithmeticTail>(&config.tail()); a && a->b > 0) {
    const double start = rho_pow(drift, static_cast<double>(x) + len + 1);
    if (start > 0.0) {
      const double abs_tol = std::max(tol * start, 1e-300);
      log_ratio += static_cast<double>(a->b) *
                   log_q_pochhammer_inf(start, QParam(drift.rho()), abs_tol).log_value;
    }
  }
  return cdf_here * -std::expm1(log_ratio.value());
}

MomentReport general_moment(const DriftParam& drift, const FrogConfig& config,
                            unsigned m, double tol) {
  if (m < 1) throw std::domain_error("moment order must be >= 1");
  const RangeDistribution law(drift, config, tol);
  MomentReport r;
  r.m = m;
  r.exact = law.moment_by_survival(m);
  r.asymptotic = std::pow(drift.z_rho(), static_cast<double>(m));
  r.ratio_exact_over_asymptotic = r.exact / r.asymptotic;
  return r;
}

double zrho_ratio_lemma_check(const DriftParam& drift, double delta, unsigned m,
                              double tol) {
  if (!(delta > 0.0)) throw std::domain_error("delta must be positive");
  const double c = drift.z_rho() * (1.0 + delta);
  const double rho = drift.rho();
  const double one_minus = 1.0 - rho;
  const auto md = static_cast<double>(m);
  CompensatedSum sum;
  for (std::int64_t x = 1;; ++x) {
    const double xd = static_cast<double>(x);
    sum += std::exp(md * std::log1p(xd / c) + xd * drift.log_rho());
    const double next = xd + 1.0;
    const double r = std::pow((c + next + 1.0) / (c + next), md) * rho;
    if (r < 1.0) {
      const double bound = std::exp(md * std::log1p(next / c) +
                                    next * drift.log_rho()) /
                           (1.0 - r);
      if (one_minus * bound <= tol) break;
    }
  }
  return one_minus * sum.value();
}

double expected_hitters(const DriftParam& drift, double depth) {
  if (!(depth >= 0.0)) throw std::domain_error("depth must be >= 0");
  return std::exp(depth * drift.log_rho() - std::log1p(-drift.rho()));
}

ScaledConvergence scaled_convergence_report(const DriftParam& drift,
                                            double tol) {
  const double z = drift.z_rho();
  ScaledConvergence s;
  s.mean_y = cumulant(drift, 1, tol) / z;
  s.var_y = cumulant(drift, 2, tol) / (z * z);
  return s;
}

}  // namespace frogrange
