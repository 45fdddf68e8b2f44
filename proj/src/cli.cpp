#include "frogrange/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "frogrange/distribution.hpp"
#include "frogrange/model.hpp"
#include "frogrange/range_bounds.hpp"
#include "frogrange/report_io.hpp"
#include "frogrange/simulator.hpp"

namespace frogrange {

namespace {

using json = nlohmann::ordered_json;

/// Usage errors found after CLI11 has accepted the flags.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_real(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size()) {
    throw UsageError("cannot parse " + what + " value '" + token + "'");
  }
  return v;
}

std::vector<double> parse_rho_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    out.push_back(parse_real(text.substr(start, pos - start), "--rho"));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// "gap,ratio,count": rho_i = 1 - gap * ratio^i for i < count.
std::vector<double> parse_rho_geometric(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 3) {
    throw UsageError("--rho-geom expects gap,ratio,count but got '" + text + "'");
  }
  const double gap = parse_real(parts[0], "--rho-geom gap");
  const double ratio = parse_real(parts[1], "--rho-geom ratio");
  const double count = parse_real(parts[2], "--rho-geom count");
  if (count < 0 || count != std::floor(count)) {
    throw UsageError("--rho-geom count must be a nonnegative integer, got '" +
                     parts[2] + "'");
  }
  std::vector<double> out;
  for (int i = 0; i < static_cast<int>(count); ++i) {
    out.push_back(1.0 - gap * std::pow(ratio, i));
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CsvCell opt_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

json opt_json(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

struct Emitter {
  std::ostream& out;
  std::string format;
  bool timestamp = false;

  void envelope(const std::string& subcommand, const json& params,
                json payload) const {
    json env;
    env["schema"] = kSchemaId;
    env["tool_version"] = kToolVersion;
    env["subcommand"] = subcommand;
    env["parameters"] = params;
    if (timestamp) env["timestamp"] = utc_timestamp();
    env["payload"] = std::move(payload);
    out << env.dump(2) << '\n';
  }

  void table(const std::string& subcommand, const json& params,
             const CsvTable& t) const {
    if (format == "csv") {
      out << t.emit();
    } else {
      envelope(subcommand, params, json{{"rows", t.to_json()}});
    }
  }
};

// Options shared by every subcommand.
struct Common {
  std::string format;
  bool timestamp = false;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->capture_default_str();
  sub->add_flag("--timestamp", c.timestamp,
                "Record the wall-clock time in the JSON envelope");
}

// --- dist ------------------------------------------------------------------

struct DistArgs {
  Common common;
  double rho = 0.0;
  std::string eta = "const:1";
  std::int64_t x_max = 20;
  double tol = kDefaultTol;
};

void run_dist(const DistArgs& a, std::ostream& out) {
  if (a.x_max < 0) throw UsageError("--x-max must be >= 0");
  const DriftParam drift(a.rho);
  const auto config = parse_eta_spec(a.eta, Support::NonnegativeOnly);
  const RangeDistribution dist(drift, config, a.tol);
  CsvTable t({"x", "pmf", "cdf", "log_pmf", "log_cdf"});
  for (std::int64_t x = 0; x <= a.x_max; ++x) {
    t.add_row({x, dist.pmf(x), dist.cdf(x), dist.log_pmf(x), dist.log_cdf(x)});
  }
  const json params{{"rho", a.rho},
                    {"eta", config.to_spec()},
                    {"x_max", a.x_max},
                    {"tol", a.tol}};
  Emitter{out, a.common.format, a.common.timestamp}.table("dist", params, t);
}

// --- moments ---------------------------------------------------------------

struct MomentsArgs {
  Common common;
  double rho = 0.0;
  std::string eta = "const:1";
  unsigned m_max = 4;
  double tol = kDefaultTol;
};

void run_moments(const MomentsArgs& a, std::ostream& out) {
  const DriftParam drift(a.rho);
  const auto config = parse_eta_spec(a.eta, Support::NonnegativeOnly);
  CsvTable t({"m", "exact", "via_bell", "asymptotic", "ratio"});
  for (unsigned m = 1; m <= a.m_max; ++m) {
    const auto r = config.is_single_frog() ? moment(drift, m, a.tol)
                                           : general_moment(drift, config, m, a.tol);
    t.add_row({static_cast<std::int64_t>(m), r.exact, opt_cell(r.via_bell),
               r.asymptotic, r.ratio_exact_over_asymptotic});
  }
  const json params{{"rho", a.rho},
                    {"eta", config.to_spec()},
                    {"m_max", a.m_max},
                    {"tol", a.tol}};
  Emitter{out, a.common.format, a.common.timestamp}.table("moments", params, t);
}

// --- mode ------------------------------------------------------------------

struct ModeArgs {
  Common common;
  double rho = 0.0;
};

void run_mode(const ModeArgs& a, std::ostream& out) {
  const DriftParam drift(a.rho);
  const auto b = mode_bounds(drift);
  CsvTable t({"lo", "hi", "exact", "lo_unfloored", "hi_unfloored"});
  t.add_row({b.lo, b.hi, mode_exact(drift), b.lo_unfloored, b.hi_unfloored});
  Emitter{out, a.common.format, a.common.timestamp}.table(
      "mode", json{{"rho", a.rho}}, t);
}

// --- bounds ----------------------------------------------------------------

struct BoundsArgs {
  Common common;
  double rho = 0.0;
  std::uint64_t n = 1;
  unsigned m = 1;
  double alpha = 0.5;
  bool extend_delta = false;
  double tol = kDefaultTol;
};

void run_bounds(const BoundsArgs& a, std::ostream& out) {
  const DriftParam drift(a.rho);
  const DeltaFn delta_fn(a.alpha, a.extend_delta);
  const auto phi = phi_upper(drift, a.n, a.m, a.tol);
  const auto psi = psi_lower(drift, a.n, a.m, delta_fn);
  const auto k = block_length(drift.z_rho() * (1.0 - psi.delta));
  std::optional<double> theta;
  if (drift.z_rho() * (1.0 - psi.delta) >= 1.0 && k >= 1) {
    theta = log_theta(drift, psi.delta, a.n);
  }
  std::optional<double> psi_pre;
  if (psi.pre_asymptotic_defined) psi_pre = psi.pre_asymptotic;

  const json params{{"rho", a.rho},       {"n", a.n},
                    {"m", a.m},           {"alpha", a.alpha},
                    {"extend_delta", a.extend_delta}, {"tol", a.tol}};
  const double log_eps = log_epsilon(drift, a.n, a.tol);
  if (a.common.format == "csv") {
    CsvTable t({"log_phi_asym", "log_phi_pre", "log_psi_asym", "log_psi_pre",
                "log_psi_remark", "log_epsilon", "log_theta", "delta"});
    t.add_row({phi.asymptotic, phi.pre_asymptotic, psi.asymptotic,
               opt_cell(psi_pre), psi.remark_form, log_eps, opt_cell(theta),
               psi.delta});
    out << t.emit();
    return;
  }
  json payload{{"log_phi_asym", phi.asymptotic},
               {"log_phi_pre", phi.pre_asymptotic},
               {"log_psi_asym", psi.asymptotic},
               {"log_psi_pre", opt_json(psi_pre)},
               {"log_psi_remark", psi.remark_form},
               {"log_epsilon", log_eps},
               {"log_theta", opt_json(theta)},
               {"delta", psi.delta}};
  Emitter{out, a.common.format, a.common.timestamp}.envelope("bounds", params,
                                                             std::move(payload));
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  Common common;
  double rho = 0.0;
  std::string eta = "const:1";
  std::uint64_t replicas = 10000;
  std::uint64_t seed = 1;
  std::string support = "nonneg";
  std::optional<std::uint64_t> horizon;
  std::int64_t window_lo = StepperWindow{}.lo;
  std::int64_t window_hi = StepperWindow{}.hi;
  double site_tol = 1e-6;
  std::uint64_t wave_cap = 1000000;
  unsigned threads = 0;
};

void run_simulate(const SimulateArgs& a, std::ostream& out) {
  const DriftParam drift(a.rho);
  const auto support =
      a.support == "allz" ? Support::AllOfZ : Support::NonnegativeOnly;
  const SimConfig sim{drift,
                      parse_eta_spec(a.eta, support),
                      a.replicas,
                      a.seed,
                      a.site_tol,
                      a.horizon,
                      StepperWindow{a.window_lo, a.window_hi},
                      a.wave_cap,
                      a.threads};
  const auto report = run_monte_carlo(sim);

  // Thread count is left out: it never changes the payload.
  json params{{"rho", a.rho},
              {"eta", sim.config.to_spec()},
              {"support", a.support},
              {"replicas", a.replicas},
              {"seed", a.seed},
              {"site_tol", a.site_tol},
              {"wave_cap", a.wave_cap}};
  if (a.horizon) {
    params["horizon"] = *a.horizon;
    params["window_lo"] = a.window_lo;
    params["window_hi"] = a.window_hi;
  }
  if (a.common.format == "csv") {
    CsvTable t({"x", "count", "frequency"});
    for (const auto& [x, count] : report.empirical_pmf) {
      t.add_row({x, static_cast<std::int64_t>(count), report.frequency(x)});
    }
    out << t.emit();
    return;
  }
  Emitter{out, a.common.format, a.common.timestamp}.envelope("simulate", params,
                                                             to_json(report));
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  Common common;
  std::string rho_list;
  std::string rho_geom;
  std::vector<std::string> quantities;
  std::string eta = "const:1";
  unsigned m = 1;
  std::uint64_t n = 1;
  double z = 2.0;
  double delta = 0.5;
  double alpha = 0.5;
  bool extend_delta = false;
  double tol = kDefaultTol;
};

using Quantity = std::function<std::optional<double>(const DriftParam&)>;

std::map<std::string, Quantity> sweep_quantities(const SweepArgs& a,
                                                 const FrogConfig& config) {
  const double tol = a.tol;
  auto moment_ratio = [&config, tol](unsigned m) -> Quantity {
    return [&config, m, tol](const DriftParam& d) -> std::optional<double> {
      const auto r = config.is_single_frog() ? moment(d, m, tol)
                                             : general_moment(d, config, m, tol);
      return r.ratio_exact_over_asymptotic;
    };
  };
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  std::map<std::string, Quantity> q;
  q["mean-ratio"] = moment_ratio(1);
  q["m2-ratio"] = moment_ratio(2);
  q["moment-ratio"] = moment_ratio(a.m);
  q["mean-Y"] = [tol](const DriftParam& d) -> std::optional<double> {
    return scaled_convergence_report(d, tol).mean_y;
  };
  q["var-Y"] = [tol](const DriftParam& d) -> std::optional<double> {
    return scaled_convergence_report(d, tol).var_y;
  };
  q["var-Y-normalized"] = [tol, zeta2](const DriftParam& d) -> std::optional<double> {
    const double l = std::log1p(-d.rho());
    return scaled_convergence_report(d, tol).var_y * l * l / zeta2;
  };
  q["kappa2-ratio"] = [tol](const DriftParam& d) -> std::optional<double> {
    return cumulant(d, 2, tol) / cumulant_asymptotic(d, 1);
  };
  q["mgf-limit"] = [tol, z = a.z](const DriftParam& d) -> std::optional<double> {
    return scaled_mgf(d, z, tol) / z;
  };
  q["remark-p"] = [tol, delta = a.delta](const DriftParam& d) -> std::optional<double> {
    return remark_p_far(d, delta, tol);
  };
  q["remark-q"] = [delta = a.delta](const DriftParam& d) -> std::optional<double> {
    return remark_q_near(d, delta);
  };
  q["bound-gap"] = [&a](const DriftParam& d) -> std::optional<double> {
    const auto phi = phi_upper(d, a.n, a.m, a.tol);
    const auto psi = psi_lower(d, a.n, a.m, DeltaFn(a.alpha, a.extend_delta));
    if (!psi.pre_asymptotic_defined) return std::nullopt;
    return phi.pre_asymptotic - psi.pre_asymptotic;
  };
  q["euler-asym"] = [tol](const DriftParam& d) -> std::optional<double> {
    const QParam qp(d.rho());
    const double exact = log_q_pochhammer_inf(d.rho(), qp, tol).log_value;
    return std::abs(exact - euler_function_log_asymptotic(qp)) / std::abs(exact);
  };
  q["expected-hitters"] = [](const DriftParam& d) -> std::optional<double> {
    return expected_hitters(d, d.z_rho());
  };
  q["mode-exact"] = [tol](const DriftParam& d) -> std::optional<double> {
    return static_cast<double>(mode_exact(d, tol));
  };
  return q;
}

void run_sweep(const SweepArgs& a, std::ostream& out) {
  if (!a.rho_list.empty() && !a.rho_geom.empty()) {
    throw UsageError("give either --rho or --rho-geom, not both");
  }
  const auto rhos = a.rho_geom.empty() ? parse_rho_list(a.rho_list)
                                       : parse_rho_geometric(a.rho_geom);
  if (rhos.empty()) throw UsageError("the rho list is empty");
  if (a.quantities.empty()) throw UsageError("no --quantity given");
  const auto config = parse_eta_spec(a.eta, Support::NonnegativeOnly);
  const auto table = sweep_quantities(a, config);
  std::vector<const Quantity*> selected;
  for (const auto& name : a.quantities) {
    const auto it = table.find(name);
    if (it == table.end()) throw UsageError("unknown quantity '" + name + "'");
    selected.push_back(&it->second);
  }
  CsvTable t({"rho", "quantity", "value"});
  for (double rho : rhos) {
    const DriftParam drift(rho);
    for (std::size_t i = 0; i < selected.size(); ++i) {
      t.add_row({rho, a.quantities[i], opt_cell((*selected[i])(drift))});
    }
  }
  json params{{"rho", rhos},       {"quantity", a.quantities},
              {"eta", config.to_spec()}, {"m", a.m},
              {"n", a.n},          {"z", a.z},
              {"delta", a.delta},  {"alpha", a.alpha},
              {"extend_delta", a.extend_delta}, {"tol", a.tol}};
  Emitter{out, a.common.format, a.common.timestamp}.table("sweep", params, t);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Range of the transient frog model on Z", "frogrange"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "PMF and CDF of the range minimum");
  dist_cmd->add_option("--rho", dist.rho, "Drift parameter in (0,1)")->required();
  dist_cmd->add_option("--eta", dist.eta, "Frog counts per site")->capture_default_str();
  dist_cmd->add_option("--x-max", dist.x_max, "Last x to tabulate")->capture_default_str();
  dist_cmd->add_option("--tol", dist.tol, "Series tolerance")->capture_default_str();
  add_common(dist_cmd, dist.common, "csv");

  MomentsArgs mom;
  auto* mom_cmd = app.add_subcommand("moments", "Raw moments E(X^m)");
  mom_cmd->add_option("--rho", mom.rho, "Drift parameter in (0,1)")->required();
  mom_cmd->add_option("--eta", mom.eta, "Frog counts per site")->capture_default_str();
  mom_cmd->add_option("--m-max", mom.m_max, "Highest moment order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mom_cmd->add_option("--tol", mom.tol, "Series tolerance")->capture_default_str();
  add_common(mom_cmd, mom.common, "csv");

  ModeArgs mode;
  auto* mode_cmd = app.add_subcommand("mode", "Mode of the single-frog law");
  mode_cmd->add_option("--rho", mode.rho, "Drift parameter in (0,1)")->required();
  add_common(mode_cmd, mode.common, "csv");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate quantities along a rho grid");
  sweep_cmd->add_option("--rho", sweep.rho_list, "Comma-separated rho values");
  sweep_cmd->add_option("--rho-geom", sweep.rho_geom,
                        "gap,ratio,count: rho = 1 - gap*ratio^i");
  sweep_cmd->add_option("--quantity", sweep.quantities, "Quantity names")
      ->delimiter(',');
  sweep_cmd->add_option("--eta", sweep.eta, "Frog counts per site")->capture_default_str();
  sweep_cmd->add_option("--m", sweep.m, "Moment order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--n", sweep.n, "Frogs per site of Z")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--z", sweep.z, "Argument of E(z^Y)")->capture_default_str();
  sweep_cmd->add_option("--delta", sweep.delta, "Block slack")->capture_default_str();
  sweep_cmd->add_option("--alpha", sweep.alpha, "Exponent of delta(rho)")->capture_default_str();
  sweep_cmd->add_flag("--extend-delta", sweep.extend_delta,
                      "Use a constant delta where delta(rho) is undefined");
  sweep_cmd->add_option("--tol", sweep.tol, "Series tolerance")->capture_default_str();
  add_common(sweep_cmd, sweep.common, "csv");

  SimulateArgs simu;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo samples of the range minimum");
  sim_cmd->add_option("--rho", simu.rho, "Drift parameter in (0,1)")->required();
  sim_cmd->add_option("--eta", simu.eta, "Frog counts per site")->capture_default_str();
  sim_cmd->add_option("--replicas", simu.replicas, "Number of samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--seed", simu.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--support", simu.support, "nonneg or allz")
      ->check(CLI::IsMember({"nonneg", "allz"}))
      ->capture_default_str();
  sim_cmd->add_option("--horizon", simu.horizon, "Step count for the time stepper");
  sim_cmd->add_option("--window-lo", simu.window_lo, "Stepper window left end")
      ->capture_default_str();
  sim_cmd->add_option("--window-hi", simu.window_hi, "Stepper window right end")
      ->capture_default_str();
  sim_cmd->add_option("--site-tol", simu.site_tol, "Mass of ignored far frogs")
      ->capture_default_str();
  sim_cmd->add_option("--wave-cap", simu.wave_cap, "Avalanche wave limit")
      ->capture_default_str();
  sim_cmd->add_option("--threads", simu.threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  add_common(sim_cmd, simu.common, "json");

  BoundsArgs bnd;
  auto* bnd_cmd = app.add_subcommand("bounds", "Moment bounds for n frogs per site of Z");
  bnd_cmd->add_option("--rho", bnd.rho, "Drift parameter in (0,1)")->required();
  bnd_cmd->add_option("--n", bnd.n, "Frogs per site")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bnd_cmd->add_option("--m", bnd.m, "Moment order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bnd_cmd->add_option("--alpha", bnd.alpha, "Exponent of delta(rho)")->capture_default_str();
  bnd_cmd->add_flag("--extend-delta", bnd.extend_delta,
                    "Use a constant delta where delta(rho) is undefined");
  bnd_cmd->add_option("--tol", bnd.tol, "Series tolerance")->capture_default_str();
  add_common(bnd_cmd, bnd.common, "json");

  std::vector<const char*> argv{"frogrange"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*dist_cmd) run_dist(dist, out);
    else if (*mom_cmd) run_moments(mom, out);
    else if (*mode_cmd) run_mode(mode, out);
    else if (*sweep_cmd) run_sweep(sweep, out);
    else if (*sim_cmd) run_simulate(simu, out);
    else if (*bnd_cmd) run_bounds(bnd, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SpecParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const SimulationDiagnostic& e) {
    err << "simulation stopped: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace frogrange
