#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace frogrange {

/// Cumulants kappa_1..kappa_M of a distribution; kappa(m) is 1-based.
class CumulantVector {
 public:
  explicit CumulantVector(std::vector<double> kappa);

  std::size_t size() const { return kappa_.size(); }
  double kappa(std::size_t m) const { return kappa_.at(m - 1); }
  std::span<const double> values() const { return kappa_; }

 private:
  std::vector<double> kappa_;
};

/// Exact binomial coefficient from a Pascal triangle, n <= 64.
std::uint64_t binomial(unsigned n, unsigned k);

/// Partial Bell polynomial B_{m,k}(x_1, ..., x_{m-k+1}) via
/// B_{m,k} = sum_j C(m-1, j-1) x_j B_{m-j,k-1}. x[0] holds x_1.
double partial_bell(unsigned m, unsigned k, std::span<const double> x);

/// Complete Bell polynomial by the recurrence
/// B_{m+1} = sum_i C(m, i) B_{m-i} x_{i+1}, B_0 = 1.
double complete_bell(unsigned m, std::span<const double> x);

/// Same polynomial as sum_{k=1}^m B_{m,k}; kept as an independent route.
double complete_bell_from_partials(unsigned m, std::span<const double> x);

/// m-th raw moment from the first m cumulants (Faa di Bruno for exp o g).
double moments_from_cumulants(const CumulantVector& kappa, unsigned m);

}  // namespace frogrange
