#include "frogrange/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace frogrange {

DriftParam::DriftParam(double rho) : rho_(rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::domain_error("rho must lie in (0, 1), got " +
                            std::to_string(rho));
  }
  log_rho_ = std::log(rho_);
  z_rho_ = std::log1p(-rho_) / log_rho_;
}

DriftParam DriftParam::from_p(double p) {
  if (!(p > 0.5 && p < 1.0)) {
    throw std::domain_error("p must lie in (1/2, 1), got " + std::to_string(p));
  }
  return DriftParam((1.0 - p) / p);
}

FrogConfig::FrogConfig(std::vector<std::uint64_t> prefix, Tail tail,
                       Support support)
    : prefix_(std::move(prefix)), tail_(tail), support_(support) {
  if (const auto* c = std::get_if<ConstantTail>(&tail_); c && c->n == 0) {
    throw std::domain_error("constant tail needs n >= 1; use a zero tail");
  }
  if (const auto* a = std::get_if<ArithmeticTail>(&tail_); a && a->a == 0) {
    throw std::domain_error("arithmetic tail needs a >= 1");
  }
  if (support_ == Support::AllOfZ) {
    const auto* c = std::get_if<ConstantTail>(&tail_);
    if (c == nullptr) {
      throw std::domain_error("support on all of Z requires a constant tail");
    }
    if (!std::all_of(prefix_.begin(), prefix_.end(),
                     [n = c->n](std::uint64_t v) { return v == n; })) {
      throw std::domain_error(
          "support on all of Z requires the same count at every site");
    }
    return;
  }
  const bool no_frogs =
      std::holds_alternative<ZeroTail>(tail_) &&
      std::all_of(prefix_.begin(), prefix_.end(),
                  [](std::uint64_t v) { return v == 0; });
  if (no_frogs) throw std::domain_error("configuration has no frogs");
  // The frogs at the origin start the process; with none there nothing moves.
  if (count_at(0) == 0) {
    throw std::domain_error("configuration needs at least one frog at 0");
  }
}

std::uint64_t FrogConfig::count_at(std::uint64_t k) const {
  if (k < prefix_.size()) return prefix_[k];
  return std::visit(
      [k](const auto& t) -> std::uint64_t {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ZeroTail>) {
          return 0;
        } else if constexpr (std::is_same_v<T, ConstantTail>) {
          return t.n;
        } else {
          return t.a + t.b * k;
        }
      },
      tail_);
}

std::int64_t FrogConfig::delta_at(std::uint64_t k) const {
  const auto cur = static_cast<std::int64_t>(count_at(k));
  if (k == 0) return cur;
  return cur - static_cast<std::int64_t>(count_at(k - 1));
}

std::uint64_t FrogConfig::uniform_count() const {
  const auto* c = std::get_if<ConstantTail>(&tail_);
  if (c == nullptr ||
      !std::all_of(prefix_.begin(), prefix_.end(),
                   [n = c->n](std::uint64_t v) { return v == n; })) {
    throw std::domain_error("configuration is not a uniform constant");
  }
  return c->n;
}

bool FrogConfig::is_single_frog() const {
  if (support_ != Support::NonnegativeOnly) return false;
  const auto* c = std::get_if<ConstantTail>(&tail_);
  return c != nullptr && c->n == 1 &&
         std::all_of(prefix_.begin(), prefix_.end(),
                     [](std::uint64_t v) { return v == 1; });
}

double FrogConfig::weighted_tail(double rho, std::uint64_t from) const {
  double acc = 0.0;
  const std::uint64_t len = prefix_.size();
  for (std::uint64_t k = from; k < len; ++k) {
    acc += static_cast<double>(prefix_[k]) * std::pow(rho, static_cast<double>(k));
  }
  const std::uint64_t start = std::max(from, len);
  const double head = std::pow(rho, static_cast<double>(start));
  const double one_minus = 1.0 - rho;
  return acc + std::visit(
                   [&](const auto& t) -> double {
                     using T = std::decay_t<decltype(t)>;
                     if constexpr (std::is_same_v<T, ZeroTail>) {
                       return 0.0;
                     } else if constexpr (std::is_same_v<T, ConstantTail>) {
                       return static_cast<double>(t.n) * head / one_minus;
                     } else {
                       const double a = static_cast<double>(t.a);
                       const double b = static_cast<double>(t.b);
                       const double s = static_cast<double>(start);
                       return head * ((a + b * s) / one_minus +
                                      b * rho / (one_minus * one_minus));
                     }
                   },
                   tail_);
}

std::string FrogConfig::to_spec() const {
  const std::string tail = std::visit(
      [](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ZeroTail>) {
          return "zero";
        } else if constexpr (std::is_same_v<T, ConstantTail>) {
          return "const:" + std::to_string(t.n);
        } else {
          return "arith:" + std::to_string(t.a) + "," + std::to_string(t.b);
        }
      },
      tail_);
  if (prefix_.empty()) return tail;
  std::string out = "prefix:[";
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(prefix_[i]);
  }
  return out + "];tail:" + tail;
}

namespace {

std::uint64_t parse_count(std::string_view token) {
  std::uint64_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw SpecParseError("invalid count '" + std::string(token) + "'");
  }
  return value;
}

Tail parse_tail(std::string_view spec) {
  if (spec == "zero") return ZeroTail{};
  if (spec.starts_with("const:")) {
    return ConstantTail{parse_count(spec.substr(6))};
  }
  if (spec.starts_with("arith:")) {
    const auto body = spec.substr(6);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) {
      throw SpecParseError("arith tail needs '<a>,<b>', got '" +
                           std::string(body) + "'");
    }
    return ArithmeticTail{parse_count(body.substr(0, comma)),
                          parse_count(body.substr(comma + 1))};
  }
  throw SpecParseError("unknown eta family '" + std::string(spec) + "'");
}

}  // namespace

FrogConfig parse_eta_spec(std::string_view spec, Support support) {
  if (!spec.starts_with("prefix:")) {
    const Tail tail = parse_tail(spec);
    if (std::holds_alternative<ZeroTail>(tail)) {
      throw SpecParseError("'zero' is only valid as a tail after a prefix");
    }
    return FrogConfig({}, tail, support);
  }
  auto body = spec.substr(7);
  const auto sep = body.find(";tail:");
  if (sep == std::string_view::npos || !body.starts_with('[') ||
      body[sep - 1] != ']') {
    throw SpecParseError("prefix spec must read 'prefix:[n0,...];tail:<spec>', got '" +
                         std::string(spec) + "'");
  }
  auto list = body.substr(1, sep - 2);
  std::vector<std::uint64_t> prefix;
  while (!list.empty()) {
    const auto comma = list.find(',');
    prefix.push_back(parse_count(list.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
    if (list.empty()) throw SpecParseError("trailing ',' in prefix list");
  }
  return FrogConfig(std::move(prefix), parse_tail(body.substr(sep + 6)), support);
}

}  // namespace frogrange
