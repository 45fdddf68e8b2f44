#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace frogrange {

/// Drift of the underlying walk: right-step probability p in (1/2, 1),
/// rho = (1 - p) / p in (0, 1).
class DriftParam {
 public:
  explicit DriftParam(double rho);
  static DriftParam from_p(double p);

  double rho() const { return rho_; }
  double p() const { return 1.0 / (1.0 + rho_); }
  double log_rho() const { return log_rho_; }
  /// Z_rho = ln(1 - rho) / ln(rho), the characteristic depth of the range.
  double z_rho() const { return z_rho_; }

 private:
  double rho_;
  double log_rho_;
  double z_rho_;
};

enum class Support { NonnegativeOnly, AllOfZ };

struct ZeroTail {
  bool operator==(const ZeroTail&) const = default;
};
struct ConstantTail {
  std::uint64_t n = 1;
  bool operator==(const ConstantTail&) const = default;
};
/// eta_k = a + b k for every k at or beyond the prefix (k is absolute).
struct ArithmeticTail {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  bool operator==(const ArithmeticTail&) const = default;
};
using Tail = std::variant<ZeroTail, ConstantTail, ArithmeticTail>;

/// Initial sleeping-frog configuration eta. Only tail families whose weighted
/// sums sum_k eta_k rho^k converge for every rho in (0, 1) are representable.
class FrogConfig {
 public:
  FrogConfig(std::vector<std::uint64_t> prefix, Tail tail,
             Support support = Support::NonnegativeOnly);

  static FrogConfig single_frog() { return constant(1); }
  static FrogConfig constant(std::uint64_t n,
                             Support support = Support::NonnegativeOnly) {
    return FrogConfig({}, ConstantTail{n}, support);
  }
  static FrogConfig arithmetic(std::uint64_t a, std::uint64_t b) {
    return FrogConfig({}, ArithmeticTail{a, b});
  }

  const std::vector<std::uint64_t>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }
  Support support() const { return support_; }

  /// eta_k for k >= 0. For AllOfZ the same count applies at negative sites.
  std::uint64_t count_at(std::uint64_t k) const;

  /// eta_k - eta_{k-1} with eta_{-1} = 0.
  std::int64_t delta_at(std::uint64_t k) const;

  /// The constant per-site count for Constant tails with a matching prefix.
  std::uint64_t uniform_count() const;

  bool is_single_frog() const;

  /// sum_{k >= from} eta_k rho^k in closed form.
  double weighted_tail(double rho, std::uint64_t from = 0) const;

  std::string to_spec() const;

  bool operator==(const FrogConfig&) const = default;

 private:
  std::vector<std::uint64_t> prefix_;
  Tail tail_;
  Support support_;
};

/// Malformed eta specification; what() names the offending token.
class SpecParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grammar: const:<n> | arith:<a>,<b> | prefix:[n0,n1,...];tail:<tail>
/// where <tail> is zero | const:<n> | arith:<a>,<b>.
FrogConfig parse_eta_spec(std::string_view spec,
                          Support support = Support::NonnegativeOnly);

}  // namespace frogrange
