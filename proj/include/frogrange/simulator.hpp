#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "frogrange/model.hpp"

namespace frogrange {

/// Independent random stream for replica `stream` of a run seeded with
/// `seed`. The engine state depends only on (seed, stream), so replicas can
/// run in any order on any thread.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on (0, 1].
  double uniform_open_closed();
  /// Uniform on [0, 1).
  double uniform();

 private:
  std::mt19937_64 engine_;
};

/// Raised when a replica cannot complete within its declared limits.
class SimulationDiagnostic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepperWindow {
  std::int64_t lo = -50;
  std::int64_t hi = 200;
};

struct SimConfig {
  DriftParam drift;
  FrogConfig config;
  std::uint64_t replicas = 1;
  std::uint64_t seed = 0;
  /// Total-variation budget for ignoring frogs far to the right.
  double site_truncation_tol = 1e-6;
  /// Set only for the literal time-stepping validation sampler.
  std::optional<std::uint64_t> horizon;
  StepperWindow window;
  std::uint64_t wave_cap = 1'000'000;
  /// Worker threads; 0 defers to FROGRANGE_THREADS, then to the hardware.
  unsigned threads = 0;

  void validate() const;
};

struct MomentEstimate {
  unsigned m = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
};

struct SimReport {
  std::string sampler;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  std::map<std::int64_t, std::uint64_t> empirical_pmf;  // x -> count
  std::vector<MomentEstimate> moments;                  // m = 1..4
  std::optional<std::map<std::uint64_t, std::uint64_t>> wave_counts;

  double frequency(std::int64_t x) const;
};

struct AvalancheSample {
  std::int64_t range_min = 0;
  std::uint64_t waves = 1;
  std::int64_t first_wave = 0;
};

/// D with P(D >= k) = rho^k: how far below its start a frog ever gets.
std::int64_t sample_min_displacement(const DriftParam& drift,
                                     RandomStream& rng);

/// Largest site whose frogs are simulated: beyond it the frogs together
/// reach 0 with probability at most site_truncation_tol.
std::int64_t site_cutoff(const DriftParam& drift, const FrogConfig& config,
                         double site_truncation_tol);

std::int64_t sample_range_nonneg(const SimConfig& sim, RandomStream& rng);

/// Wave-by-wave avalanche for n frogs on every site of Z.
AvalancheSample sample_range_allz(const SimConfig& sim, RandomStream& rng);

/// Literal discrete-time dynamics for `horizon` steps inside the window.
/// Frogs leaving through the right edge are dropped; leaving through the
/// left edge raises SimulationDiagnostic.
std::int64_t bounded_horizon_stepper(const SimConfig& sim, RandomStream& rng);

unsigned resolve_thread_count(unsigned requested);

SimReport run_monte_carlo(const SimConfig& sim);

}  // namespace frogrange
