#include "frogrange/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

namespace frogrange {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open_closed() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

void SimConfig::validate() const {
  if (replicas < 1) throw std::domain_error("replicas must be >= 1");
  if (!(site_truncation_tol > 0.0 && site_truncation_tol <= 0.01)) {
    throw std::domain_error("site_truncation_tol must lie in (0, 0.01]");
  }
  if (horizon) {
    if (config.support() != Support::NonnegativeOnly) {
      throw std::domain_error("the time stepper only covers nonnegative support");
    }
    if (!(window.lo < 0 && window.hi > 0)) {
      throw std::domain_error("stepper window must contain the origin");
    }
  }
  if (wave_cap < 1) throw std::domain_error("wave_cap must be >= 1");
}

double SimReport::frequency(std::int64_t x) const {
  const auto it = empirical_pmf.find(x);
  if (it == empirical_pmf.end() || replicas == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(replicas);
}

std::int64_t sample_min_displacement(const DriftParam& drift,
                                     RandomStream& rng) {
  return static_cast<std::int64_t>(
      std::floor(std::log(rng.uniform_open_closed()) / drift.log_rho()));
}

std::int64_t site_cutoff(const DriftParam& drift, const FrogConfig& config,
                         double site_truncation_tol) {
  // P(some frog beyond X reaches 0) <= sum_{x > X} eta_x rho^{x+1}.
  const double rho = drift.rho();
  auto ignored_mass = [&](std::int64_t x) {
    return rho * config.weighted_tail(rho, static_cast<std::uint64_t>(x + 1));
  };
  std::int64_t hi = std::max<std::int64_t>(
      static_cast<std::int64_t>(config.prefix().size()), 1);
  while (ignored_mass(hi) > site_truncation_tol) {
    hi *= 2;
    if (hi > (std::int64_t{1} << 40)) {
      throw std::domain_error("site truncation budget is unreachable");
    }
  }
  std::int64_t lo = -1;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (ignored_mass(mid) <= site_truncation_tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

namespace {

// Deepest excursion below 0 of the frogs on sites 0..cutoff.
std::int64_t first_wave_depth(const DriftParam& drift, const FrogConfig& config,
                              std::int64_t cutoff, RandomStream& rng) {
  std::int64_t depth = 0;
  for (std::int64_t x = 0; x <= cutoff; ++x) {
    const auto frogs = config.count_at(static_cast<std::uint64_t>(x));
    for (std::uint64_t i = 0; i < frogs; ++i) {
      depth = std::max(depth, sample_min_displacement(drift, rng) - x);
    }
  }
  return depth;
}

}  // namespace

std::int64_t sample_range_nonneg(const SimConfig& sim, RandomStream& rng) {
  if (sim.config.support() != Support::NonnegativeOnly) {
    throw std::domain_error("sample_range_nonneg needs nonnegative support");
  }
  const auto cutoff =
      site_cutoff(sim.drift, sim.config, sim.site_truncation_tol);
  return first_wave_depth(sim.drift, sim.config, cutoff, rng);
}

AvalancheSample sample_range_allz(const SimConfig& sim, RandomStream& rng) {
  if (sim.config.support() != Support::AllOfZ) {
    throw std::domain_error("sample_range_allz needs support on all of Z");
  }
  const auto n = sim.config.uniform_count();
  const FrogConfig nonneg = FrogConfig::constant(n);
  const auto cutoff = site_cutoff(sim.drift, nonneg, sim.site_truncation_tol);

  AvalancheSample s;
  s.first_wave = first_wave_depth(sim.drift, nonneg, cutoff, rng);
  std::int64_t activated = 0;  // sites -activated..-1 are already awake
  std::int64_t depth = s.first_wave;
  while (depth > activated) {
    if (s.waves >= sim.wave_cap) {
      throw SimulationDiagnostic(
          "avalanche exceeded " + std::to_string(sim.wave_cap) +
          " waves at depth " + std::to_string(depth));
    }
    std::int64_t next = depth;
    for (std::int64_t site = activated + 1; site <= depth; ++site) {
      for (std::uint64_t i = 0; i < n; ++i) {
        next = std::max(next, site + sample_min_displacement(sim.drift, rng));
      }
    }
    activated = depth;
    depth = next;
    ++s.waves;
  }
  s.range_min = depth;
  return s;
}

std::int64_t bounded_horizon_stepper(const SimConfig& sim, RandomStream& rng) {
  if (!sim.horizon) throw std::domain_error("stepper needs a horizon");
  if (sim.config.support() != Support::NonnegativeOnly) {
    throw std::domain_error("stepper needs nonnegative support");
  }
  const auto lo = sim.window.lo;
  const auto hi = sim.window.hi;
  const double p_right = sim.drift.p();

  std::vector<bool> woken(static_cast<std::size_t>(hi) + 1, false);
  std::vector<std::int64_t> active(sim.config.count_at(0), 0);
  std::vector<std::int64_t> next;
  std::vector<std::int64_t> newly;
  woken[0] = true;
  std::int64_t minimum = 0;

  for (std::uint64_t step = 0; step < *sim.horizon && !active.empty(); ++step) {
    next.clear();
    newly.clear();
    for (auto pos : active) {
      pos += rng.uniform() < p_right ? 1 : -1;
      if (pos < lo) {
        throw SimulationDiagnostic("frog left the stepper window at " +
                                   std::to_string(pos));
      }
      if (pos > hi) continue;
      minimum = std::min(minimum, pos);
      next.push_back(pos);
      if (pos >= 0 && !woken[static_cast<std::size_t>(pos)]) {
        woken[static_cast<std::size_t>(pos)] = true;
        const auto sleeping = sim.config.count_at(static_cast<std::uint64_t>(pos));
        newly.insert(newly.end(), sleeping, pos);
      }
    }
    next.insert(next.end(), newly.begin(), newly.end());
    active.swap(next);
  }
  return -minimum;
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FROGRANGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SimReport run_monte_carlo(const SimConfig& sim) {
  sim.validate();
  enum class Kind { Nonneg, AllZ, Stepper };
  const Kind kind = sim.horizon ? Kind::Stepper
                    : sim.config.support() == Support::AllOfZ ? Kind::AllZ
                                                              : Kind::Nonneg;
  const auto count = sim.replicas;
  std::vector<std::int64_t> values(count);
  std::vector<std::uint64_t> waves(kind == Kind::AllZ ? count : 0);

  const unsigned threads = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_thread_count(sim.threads), count));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      for (std::uint64_t i = t; i < count; i += threads) {
        RandomStream rng(sim.seed, i);
        switch (kind) {
          case Kind::Nonneg:
            values[i] = sample_range_nonneg(sim, rng);
            break;
          case Kind::Stepper:
            values[i] = bounded_horizon_stepper(sim, rng);
            break;
          case Kind::AllZ: {
            const auto s = sample_range_allz(sim, rng);
            values[i] = s.range_min;
            waves[i] = s.waves;
            break;
          }
        }
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SimReport report;
  report.sampler = kind == Kind::Stepper ? "stepper"
                   : kind == Kind::AllZ  ? "avalanche"
                                         : "nonneg";
  report.replicas = count;
  report.seed = sim.seed;
  for (auto v : values) ++report.empirical_pmf[v];
  if (kind == Kind::AllZ) {
    report.wave_counts.emplace();
    for (auto w : waves) ++(*report.wave_counts)[w];
  }
  const auto nd = static_cast<double>(count);
  for (unsigned m = 1; m <= 4; ++m) {
    double mean = 0.0;
    for (auto v : values) mean += std::pow(static_cast<double>(v), m);
    mean /= nd;
    double ss = 0.0;
    for (auto v : values) {
      const double d = std::pow(static_cast<double>(v), m) - mean;
      ss += d * d;
    }
    const double se = count > 1 ? std::sqrt(ss / (nd - 1.0) / nd) : 0.0;
    report.moments.push_back({m, mean, se});
  }
  return report;
}

}  // namespace frogrange
