#pragma once

#include <cstdint>

#include "frogrange/model.hpp"
#include "frogrange/qseries.hpp"

// Moment bounds for the configuration with n frogs on every site of Z.
// Values that underflow or overflow at rho near 1 are returned as logs.

namespace frogrange {

/// delta(rho) = |ln(1 - rho)|^{-alpha}, defined for rho > 1 - 1/e. Below that
/// point the value may be assigned freely; with allow_extension set it is
/// pinned to kExtendedDelta.
class DeltaFn {
 public:
  static constexpr double kExtendedDelta = 0.5;

  explicit DeltaFn(double alpha, bool allow_extension = false);

  double alpha() const { return alpha_; }
  bool allows_extension() const { return allow_extension_; }
  static double domain_start();
  bool in_domain(double rho) const { return rho > domain_start(); }
  double operator()(double rho) const;

 private:
  double alpha_;
  bool allow_extension_;
};

/// Block length used for Z_rho (1 +- delta): nearest integer, ties up, min 1.
std::int64_t block_length(double value);

/// log eps_{rho,n} = n log (rho; rho)_inf, the probability that n frogs per
/// nonnegative site never visit -1.
double log_epsilon(const DriftParam& drift, std::uint64_t n,
                   double tol = kDefaultTol);

/// log theta = n sum_{j<K} ln(1 - rho^K rho^j), K = block_length(Z(1-delta)).
double log_theta(const DriftParam& drift, double delta, std::uint64_t n);

struct GeometricMoment {
  double exact = 0.0;
  double asymptotic = 0.0;  // m! / eps^m
  double ratio = 0.0;
};

/// E(T^m) for P(T = k) = (1 - eps)^k eps, k >= 0.
GeometricMoment geometric_moment(double eps, unsigned m,
                                 double tol = kDefaultTol);

struct LogBound {
  double asymptotic = 0.0;      // rho -> 1 closed form
  double pre_asymptotic = 0.0;  // assembled from exact pieces at this rho
};

/// Upper bound on log E(X^m) for n frogs per site of Z.
/// asymptotic: m ln Z + (n/2) ln((1-rho)/(2 pi)) + (pi^2/6) m n / (1-rho)
/// pre_asymptotic: log(eps^{-m} Z^m)
LogBound phi_upper(const DriftParam& drift, std::uint64_t n, unsigned m,
                   double tol = kDefaultTol);

struct LowerBound {
  double asymptotic = 0.0;       // ln m! + m ln Z + m n / (1-rho)^delta
  double remark_form = 0.0;      // ln m! + m ln Z + m n exp(|ln(1-rho)|^{1-alpha})
  double pre_asymptotic = 0.0;   // log(m! theta^{-m} Z^m (1-delta)^m)
  bool pre_asymptotic_defined = false;  // false when Z(1-delta) < 1
  double delta = 0.0;
};

LowerBound psi_lower(const DriftParam& drift, std::uint64_t n, unsigned m,
                     const DeltaFn& delta);

/// P: no frog started right of Z(1+delta) ever reaches 0.
double remark_p_far(const DriftParam& drift, double delta,
                    double tol = kDefaultTol);
/// Q: none of the frogs on the first Z(1-delta) sites reaches -Z(1-delta).
double remark_q_near(const DriftParam& drift, double delta);

struct RemarkProbabilities {
  double p_far = 0.0;
  double q_near = 0.0;
};

RemarkProbabilities remark_probabilities(const DriftParam& drift, double delta,
                                         double tol = kDefaultTol);

}  // namespace frogrange
