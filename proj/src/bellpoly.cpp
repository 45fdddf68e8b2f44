#include "frogrange/bellpoly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace frogrange {

namespace {

constexpr unsigned kMaxBinomial = 64;

using PascalRow = std::array<std::uint64_t, kMaxBinomial + 1>;

const std::array<PascalRow, kMaxBinomial + 1>& pascal() {
  static const auto table = [] {
    std::array<PascalRow, kMaxBinomial + 1> t{};
    for (unsigned n = 0; n <= kMaxBinomial; ++n) {
      t[n][0] = 1;
      for (unsigned k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

}  // namespace

CumulantVector::CumulantVector(std::vector<double> kappa)
    : kappa_(std::move(kappa)) {
  if (kappa_.empty()) throw std::domain_error("cumulant vector is empty");
  for (double v : kappa_) {
    if (!std::isfinite(v)) throw std::domain_error("cumulant is not finite");
  }
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (n > kMaxBinomial) {
    throw std::domain_error("binomial: n above " +
                            std::to_string(kMaxBinomial));
  }
  if (k > n) return 0;
  return pascal()[n][k];
}

double partial_bell(unsigned m, unsigned k, std::span<const double> x) {
  if (k > m || (m > 0 && k == 0)) {
    if (m == 0 && k == 0) return 1.0;
    throw std::domain_error("partial_bell: need 1 <= k <= m");
  }
  if (m == 0) return 1.0;
  if (x.size() < m - k + 1) {
    throw std::domain_error("partial_bell: need at least m-k+1 arguments");
  }
  // table[i][j] = B_{i,j}, rows 0..m, columns 0..k.
  std::vector<std::vector<double>> table(m + 1, std::vector<double>(k + 1, 0.0));
  table[0][0] = 1.0;
  for (unsigned j = 1; j <= k; ++j) {
    for (unsigned i = j; i <= m; ++i) {
      double acc = 0.0;
      for (unsigned r = 1; r <= i - j + 1; ++r) {
        acc += static_cast<double>(binomial(i - 1, r - 1)) * x[r - 1] *
               table[i - r][j - 1];
      }
      table[i][j] = acc;
    }
  }
  return table[m][k];
}

double complete_bell(unsigned m, std::span<const double> x) {
  if (m < 1) throw std::domain_error("complete_bell: need m >= 1");
  if (x.size() < m) {
    throw std::domain_error("complete_bell: need at least m arguments");
  }
  std::vector<double> b(m + 1, 0.0);
  b[0] = 1.0;
  for (unsigned n = 0; n < m; ++n) {
    double acc = 0.0;
    for (unsigned i = 0; i <= n; ++i) {
      acc += static_cast<double>(binomial(n, i)) * b[n - i] * x[i];
    }
    b[n + 1] = acc;
  }
  return b[m];
}

double complete_bell_from_partials(unsigned m, std::span<const double> x) {
  if (m < 1) throw std::domain_error("complete_bell: need m >= 1");
  double acc = 0.0;
  for (unsigned k = 1; k <= m; ++k) acc += partial_bell(m, k, x);
  return acc;
}

double moments_from_cumulants(const CumulantVector& kappa, unsigned m) {
  if (m < 1 || m > kappa.size()) {
    throw std::domain_error("moments_from_cumulants: order " +
                            std::to_string(m) + " outside 1.." +
                            std::to_string(kappa.size()));
  }
  return complete_bell(m, kappa.values());
}

}  // namespace frogrange
