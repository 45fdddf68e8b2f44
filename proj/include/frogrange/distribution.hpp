#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "frogrange/bellpoly.hpp"
#include "frogrange/model.hpp"
#include "frogrange/qseries.hpp"

namespace frogrange {

// Series of positive terms in this module stop once the certified tail bound
// is at most tol * max(1, |partial sum|): absolute for small sums, relative
// for the large moments that appear as rho -> 1.

struct MomentReport {
  unsigned m = 0;
  double exact = 0.0;
  std::optional<double> via_bell;
  double asymptotic = 0.0;  // Z_rho^m
  double ratio_exact_over_asymptotic = 0.0;
};

struct ModeBounds {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double lo_unfloored = 0.0;
  double hi_unfloored = 0.0;
};

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

struct ScaledConvergence {
  double mean_y = 0.0;
  double var_y = 0.0;

  /// Chebyshev: P(|Y - 1| > eps) <= 4 Var(Y) / eps^2 once |E Y - 1| < eps / 2.
  double deviation_bound(double eps) const { return 4.0 * var_y / (eps * eps); }
};

/// Lazily tabulated law of the range minimum X for a nonnegative-support
/// configuration. log P(X <= x) is built by backward recursion from a far
/// site, so small survival probabilities keep full relative accuracy.
/// Concurrent reads are safe.
class RangeDistribution {
 public:
  RangeDistribution(DriftParam drift, FrogConfig config,
                    double tol = kDefaultTol);

  const DriftParam& drift() const { return drift_; }
  const FrogConfig& config() const { return config_; }
  double tol() const { return tol_; }

  double log_cdf(std::int64_t x) const;
  double cdf(std::int64_t x) const;
  /// P(X > x), accurate when tiny.
  double survival(std::int64_t x) const;
  double log_pmf(std::int64_t x) const;
  double pmf(std::int64_t x) const;

  /// Upper bound on P(X > x) from sum_k eta_k rho^{x+k+1} / (1 - rho^{x+1}).
  double survival_bound(std::int64_t x) const;

  /// E(X^m) as sum_x ((x+1)^m - x^m) P(X > x).
  double moment_by_survival(unsigned m) const;
  /// E(X^m) as sum_x x^m P(X = x).
  double moment_by_pmf(unsigned m) const;

  std::int64_t tabulated_up_to() const;

 private:
  void ensure(std::int64_t x) const;
  void rebuild(std::int64_t top) const;
  double lookup(std::int64_t x) const;

  DriftParam drift_;
  FrogConfig config_;
  double tol_;
  double weighted_mass_;

  mutable std::shared_mutex mutex_;
  mutable std::vector<double> log_cdf_;  // index x = 0..top
};

double single_log_cdf(const DriftParam& drift, std::int64_t x,
                      double tol = kDefaultTol);
double single_cdf(const DriftParam& drift, std::int64_t x,
                  double tol = kDefaultTol);
double single_pmf(const DriftParam& drift, std::int64_t x,
                  double tol = kDefaultTol);

ModeBounds mode_bounds(const DriftParam& drift);
/// Smallest argmax of the single-frog PMF, by scanning past the upper bound.
std::int64_t mode_exact(const DriftParam& drift, double tol = kDefaultTol);

/// kappa_m = sum_{k>=1} k^{m-1} rho^k / (1 - rho^k)
double cumulant(const DriftParam& drift, unsigned m, double tol = kDefaultTol);
CumulantVector cumulants(const DriftParam& drift, unsigned count,
                         double tol = kDefaultTol);

/// g(t) = sum_{k>=1} ln((1 - rho^k) / (1 - e^t rho^k)), needs e^t rho < 1.
double cgf(const DriftParam& drift, double t, double tol = kDefaultTol);

/// E(z^Y) with Y = X / Z_rho; tends to z as rho -> 1.
double scaled_mgf(const DriftParam& drift, double z, double tol = kDefaultTol);

MomentReport moment(const DriftParam& drift, unsigned m,
                    double tol = kDefaultTol);

/// Mean and variance through the q-digamma function and its derivative.
MeanVariance mean_variance_closed_form(const DriftParam& drift,
                                       double tol = kDefaultTol);

/// j = 0: ln(1-rho)/ln(rho). j >= 1: j! zeta(j+1) / (-ln rho)^{j+1}.
/// Leading behaviour of kappa_{j+1} as rho -> 1.
double cumulant_asymptotic(const DriftParam& drift, unsigned j);

double general_log_cdf(const DriftParam& drift, const FrogConfig& config,
                       std::int64_t x, double tol = kDefaultTol);
double general_cdf(const DriftParam& drift, const FrogConfig& config,
                   std::int64_t x, double tol = kDefaultTol);
/// CDF(x) - CDF(x-1), evaluated without cancellation.
double general_pmf(const DriftParam& drift, const FrogConfig& config,
                   std::int64_t x, double tol = kDefaultTol);
/// CDF(x) * (1 - prod_k (1 - rho^{x+k})^{Delta_k}), Delta_k = eta_k - eta_{k-1}.
double general_pmf_delta_form(const DriftParam& drift, const FrogConfig& config,
                              std::int64_t x, double tol = kDefaultTol);

MomentReport general_moment(const DriftParam& drift, const FrogConfig& config,
                            unsigned m, double tol = kDefaultTol);

/// (1-rho) sum_{x>=1} (1 + x / (Z(1+delta)))^m rho^x, the quotient of the two
/// sides of sum_x (Z(1+delta) + x)^m rho^x ~ Z^m (1+delta)^m / (1-rho).
double zrho_ratio_lemma_check(const DriftParam& drift, double delta, unsigned m,
                              double tol = kDefaultTol);

/// Expected number of nonnegative-site frogs that ever reach -depth:
/// sum_{x>=0} rho^{x+depth} = rho^depth / (1 - rho).
double expected_hitters(const DriftParam& drift, double depth);

ScaledConvergence scaled_convergence_report(const DriftParam& drift,
                                            double tol = kDefaultTol);

}  // namespace frogrange
