#include "kicktop/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "kicktop/error.hpp"
#include "kicktop/lyapunov.hpp"
#include "kicktop/mutual_info.hpp"
#include "kicktop/quantum.hpp"
#include "kicktop/rng.hpp"
#include "kicktop/version.hpp"

namespace kicktop {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json conventions() {
  return {
      {"mi_units", kMiUnits},
      {"mi_estimator", kMiVariant},
      {"mi_marginal_scaling", "each marginal divided by its standard deviation"},
      {"mi_tie_jitter", "1e-10 x rescaled data range, keyed on (x1, x2, seed)"},
      {"mi_variables", "x1 = J1x/j, x2 = J2x/j after each complete step"},
      {"entropy_log_base", "e"},
      {"linear_entropy", "(1 - |<J>/j|^2) / 2"},
      {"patch_shape", "square in (theta, phi): dtheta = dphi = sqrt(solid_angle / sin theta0)"},
      {"patch_measure", "uniform in sphere area"},
      {"subsystem_magnitudes", "|J1| = 1/2, |J2| = j - 1/2"},
      {"mi_map_spreads", "same patch spreads as mi-dynamics"},
      {"teq_rule", "first step reaching 90% of the mean over the last 20% of the series"},
      {"growth_fit", "least squares over the 20%-80% rise of the equilibrium value; bracketing "
                     "steps added when fewer than 4 steps fall inside"},
      {"rng", "mt19937_64 per trajectory, seed = splitmix(seed, trajectory index)"},
      {"cell_seed", "splitmix(seed, cell index)"},
  };
}

json base_metadata(const ExperimentConfig& config) {
  return {{"kind", std::string(to_string(config.kind))},
          {"version", kVersion},
          {"config", config.to_json()},
          {"conventions", conventions()},
          {"results", json::object()}};
}

double sem(std::span<const double> v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

json growth_json(std::span<const double> series, double equilibrium) {
  try {
    const GrowthFit g = fit_growth_rate(series, equilibrium, ShortWindow::kWiden);
    return {{"slope", g.slope},
            {"intercept", g.intercept},
            {"first_step", g.first_step},
            {"last_step", g.last_step},
            {"widened", g.widened}};
  } catch (const AnalysisError& e) {
    return {{"error", e.what()}};
  }
}

json teq_json(std::span<const double> series) {
  try {
    const TeqResult t = estimate_teq(series);
    return {{"teq", t.teq}, {"tail_mean", t.tail_mean}, {"threshold", t.threshold}};
  } catch (const AnalysisError& e) {
    return {{"error", e.what()}};
  }
}

EnsembleSpec ensemble_for(const ExperimentConfig& c, const SphericalPoint& center, double j,
                          std::uint64_t seed) {
  return {CapDistribution(center, c.spread1),
          CapDistribution(center, c.spread2.value_or(1.0 / j)),
          j,
          c.ensemble,
          c.steps,
          seed};
}

Dataset run_phase_portrait(const ExperimentConfig& c) {
  std::vector<SphericalPoint> initials{c.center};
  const auto grid = angle_grid(c.grid_theta, c.grid_phi);
  initials.insert(initials.end(), grid.begin(), grid.end());
  const auto points = phase_portrait(initials, KickParams(c.kappa), c.steps);

  Dataset d{"phase-portrait", {"traj_id", "step", "theta", "phi", "x", "y", "z"}, {}, base_metadata(c)};
  d.rows.reserve(points.size());
  for (const auto& p : points) {
    d.add_row({static_cast<std::int64_t>(p.traj_id), static_cast<std::int64_t>(p.step),
               p.angles.theta, p.angles.phi, p.position.x(), p.position.y(), p.position.z()});
  }
  d.metadata["results"]["highlighted_traj_id"] = 0;
  d.metadata["results"]["trajectories"] = initials.size();
  return d;
}

Dataset run_entropy_dynamics(const ExperimentConfig& c) {
  const FloquetOperator u(c.j, KickParams(c.kappa));
  const auto bloch = evolve_expectations(coherent_state(c.j, c.center.theta, c.center.phi), u, c.steps);

  Dataset d{"entropy-dynamics", {"step", "rx", "ry", "rz", "S_linear", "S_vN"}, {}, base_metadata(c)};
  std::vector<double> s_lin;
  for (std::size_t t = 0; t < bloch.size(); ++t) {
    const auto& r = bloch[t];
    s_lin.push_back(linear_entropy(r));
    d.add_row({static_cast<std::int64_t>(t), r.x, r.y, r.z, s_lin.back(),
               von_neumann_entropy_single_spin(r)});
  }
  const double s_eq = window_mean(s_lin, c.window_lo, c.window_hi);
  auto& res = d.metadata["results"];
  res["S_eq"] = s_eq;
  res["equilibration"] = teq_json(s_lin);
  res["growth_fit"] = growth_json(s_lin, s_eq);
  return d;
}

Dataset run_mi_dynamics(const ExperimentConfig& c) {
  const SampleSeries samples = mi_dynamics_samples(c);
  const auto mi = mi_series(samples, c.k, c.seed);

  Dataset d{"mi-dynamics", {"step", "I12"}, {}, base_metadata(c)};
  for (std::size_t t = 0; t < mi.size(); ++t) d.add_row({static_cast<std::int64_t>(t), mi[t]});

  const double eq = window_mean(mi, c.window_lo, c.window_hi);
  auto& res = d.metadata["results"];
  res["I12_eq"] = eq;
  res["equilibration"] = teq_json(mi);
  res["growth_fit"] = growth_json(mi, eq);
  try {
    const auto lyap = benettin_lyapunov(c.center, KickParams(c.kappa), c.blocks, c.block_length());
    res["lyapunov"] = lyap.lambda;
    res["half_lyapunov"] = 0.5 * lyap.lambda;
  } catch (const std::exception& e) {
    res["lyapunov"] = {{"error", e.what()}};
  }
  return d;
}

Dataset run_map(const ExperimentConfig& c) {
  const EquilibriumMap map = equilibrium_map(c);
  const char* value_name = c.kind == ExperimentKind::kEntropyMap  ? "S_eq"
                           : c.kind == ExperimentKind::kThermoMap ? "S_inf"
                                                                  : "I12_eq";
  Dataset d{std::string(to_string(c.kind)),
            {"cell", "theta0", "phi0", value_name, "window_sem", "status"},
            {},
            base_metadata(c)};
  std::size_t failed = 0;
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    const auto& cell = map.cells[i];
    if (cell.status != "ok") ++failed;
    d.add_row({static_cast<std::int64_t>(i), cell.center.theta, cell.center.phi, cell.value,
               cell.window_sem, cell.status});
  }
  d.metadata["results"]["cells"] = map.cells.size();
  d.metadata["results"]["failed_cells"] = failed;
  return d;
}

Dataset run_teq_scaling(const ExperimentConfig& c) {
  Dataset d{"teq-scaling", {"j", "T_eq", "tail_mean", "threshold"}, {}, base_metadata(c)};
  std::vector<double> log_j, log_t, ln_j, teqs;
  bool positive = true;
  for (std::size_t idx = 0; idx < c.j_list.size(); ++idx) {
    const double j = c.j_list[idx];
    const std::uint64_t seed = stream_seed(c.seed, idx);
    const auto samples = evolve_ensemble(ensemble_for(c, c.center, j, seed), KickParams(c.kappa));
    const auto mi = mi_series(samples, c.k, seed);
    const TeqResult t = estimate_teq(mi);
    d.add_row({j, static_cast<std::int64_t>(t.teq), t.tail_mean, t.threshold});
    ln_j.push_back(std::log(j));
    teqs.push_back(static_cast<double>(t.teq));
    if (t.teq == 0) positive = false;
  }
  auto& res = d.metadata["results"];
  if (positive) {
    for (double t : teqs) log_t.push_back(std::log(t));
    const LineFit ll = fit_line(ln_j, log_t);
    res["loglog_fit"] = {{"slope", ll.slope}, {"intercept", ll.intercept}, {"r_squared", ll.r_squared}};
  } else {
    res["loglog_fit"] = {{"error", "T_eq = 0 for some j"}};
  }
  const LineFit lf = fit_line(ln_j, teqs);
  res["ln_fit"] = {{"slope", lf.slope}, {"intercept", lf.intercept}, {"r_squared", lf.r_squared}};
  return d;
}

Dataset run_lyapunov(const ExperimentConfig& c) {
  const auto est = benettin_lyapunov(c.center, KickParams(c.kappa), c.blocks, c.block_length());
  Dataset d{"lyapunov", {"block_index", "lambda_running"}, {}, base_metadata(c)};
  for (std::size_t i = 0; i < est.block_series.size(); ++i) {
    d.add_row({static_cast<std::int64_t>(i + 1), est.block_series[i]});
  }
  auto& res = d.metadata["results"];
  res["lambda"] = est.lambda;
  res["blocks"] = est.blocks;
  res["steps_per_block"] = est.steps_per_block;
  res["max_tangency_drift"] = est.max_tangency_drift;
  return d;
}

Dataset run_vn_vs_linear(const ExperimentConfig& c) {
  Dataset d{"vn-vs-linear", {"S_linear", "S_vN"}, {}, base_metadata(c)};
  bool monotone = true;
  double prev_lin = -1.0, prev_vn = -1.0;
  // Sweep |r| from 1 down to 0 so both entropies increase along the rows.
  for (std::size_t i = 0; i <= c.steps; ++i) {
    const double r = 1.0 - static_cast<double>(i) / static_cast<double>(c.steps);
    const Vec3 v{r, 0.0, 0.0};
    const double lin = linear_entropy(v);
    const double vn = von_neumann_entropy_single_spin(v);
    if (i > 0 && !(lin > prev_lin && vn > prev_vn)) monotone = false;
    prev_lin = lin;
    prev_vn = vn;
    d.add_row({lin, vn});
  }
  d.metadata["results"]["monotone"] = monotone;
  return d;
}

std::pair<std::vector<double>, std::vector<double>> gaussian_pairs(double rho, std::size_t n,
                                                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> a(n), b(n);
  const double c = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double z1 = r * std::cos(2.0 * std::numbers::pi * u2);
    const double z2 = r * std::sin(2.0 * std::numbers::pi * u2);
    a[i] = z1;
    b[i] = rho * z1 + c * z2;
  }
  return {std::move(a), std::move(b)};
}

Dataset run_mi_selftest(const ExperimentConfig& c) {
  Dataset d{"mi-selftest", {"rho", "k", "n", "estimate", "analytic", "abs_error"}, {}, base_metadata(c)};
  const double rhos[] = {0.0, 0.3, 0.6, 0.9};
  std::vector<std::size_t> ks{c.k};
  if (c.k != 10 && c.ensemble > 12) ks.push_back(10);
  double worst = 0.0;
  for (std::size_t r = 0; r < std::size(rhos); ++r) {
    const auto [a, b] = gaussian_pairs(rhos[r], c.ensemble, stream_seed(c.seed, r));
    const double analytic = rhos[r] == 0.0 ? 0.0 : -0.5 * std::log(1.0 - rhos[r] * rhos[r]);
    for (std::size_t k : ks) {
      const auto est = ksg_mi(a, b, k, c.seed);
      const double err = std::abs(est.value - analytic);
      worst = std::max(worst, err);
      d.add_row({rhos[r], static_cast<std::int64_t>(k), static_cast<std::int64_t>(c.ensemble),
                 est.value, analytic, err});
    }
  }
  d.metadata["results"]["max_abs_error"] = worst;
  return d;
}

}  // namespace

std::vector<double> mi_series(const SampleSeries& samples, std::size_t k,
                              std::uint64_t jitter_seed, std::size_t from_step) {
  const std::size_t total = samples.num_steps();
  if (from_step >= total) throw std::invalid_argument("mi_series: from_step past the series end");
  std::vector<double> out(total - from_step);
  const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const std::size_t t = from_step + static_cast<std::size_t>(i);
    out[static_cast<std::size_t>(i)] =
        ksg_mi(samples.x1(t), samples.x2(t), k, stream_seed(jitter_seed, t)).value;
  }
  return out;
}

std::vector<double> thermo_entropy_series(const CapDistribution& patch, const KickParams& params,
                                          std::size_t count, std::size_t steps,
                                          std::uint64_t seed) {
  std::vector<UnitVector3> members;
  members.reserve(count);
  for (const auto& p : sample_cap(patch, count, seed)) members.push_back(spherical_to_cartesian(p));
  std::vector<double> out;
  out.reserve(steps + 1);
  for (std::size_t t = 0;; ++t) {
    out.push_back(thermo_limit_entropy(members));
    if (t == steps) break;
    for (auto& m : members) m = classical_step(m, params);
  }
  return out;
}

std::vector<double> quantum_entropy_series(double j, const KickParams& params,
                                           const SphericalPoint& center, std::size_t steps) {
  const FloquetOperator u(j, params);
  const auto bloch = evolve_expectations(coherent_state(j, center.theta, center.phi), u, steps);
  std::vector<double> out;
  out.reserve(bloch.size());
  for (const auto& r : bloch) out.push_back(linear_entropy(r));
  return out;
}

SampleSeries mi_dynamics_samples(const ExperimentConfig& config) {
  config.validate();
  return evolve_ensemble(ensemble_for(config, config.center, config.j, config.seed),
                         KickParams(config.kappa));
}

MapCell map_cell(const ExperimentConfig& c, std::size_t cell_index) {
  const auto grid = angle_grid(c.grid_theta, c.grid_phi);
  if (cell_index >= grid.size()) throw std::out_of_range("map_cell: cell index out of range");
  MapCell cell;
  cell.center = grid[cell_index];
  const std::uint64_t seed = stream_seed(c.seed, cell_index);
  const KickParams params(c.kappa);
  try {
    std::vector<double> window;
    switch (c.kind) {
      case ExperimentKind::kEntropyMap: {
        const auto s = quantum_entropy_series(c.j, params, cell.center, c.window_hi);
        window.assign(s.begin() + static_cast<std::ptrdiff_t>(c.window_lo), s.end());
        break;
      }
      case ExperimentKind::kThermoMap: {
        const CapDistribution patch(cell.center, c.subsystem2_spread());
        const auto s = thermo_entropy_series(patch, params, c.ensemble, c.window_hi, seed);
        window.assign(s.begin() + static_cast<std::ptrdiff_t>(c.window_lo), s.end());
        break;
      }
      case ExperimentKind::kMiMap: {
        EnsembleSpec spec = ensemble_for(c, cell.center, c.j, seed);
        spec.steps = c.window_hi;
        window = mi_series(evolve_ensemble(spec, params), c.k, seed, c.window_lo);
        break;
      }
      default:
        throw ConfigError("map_cell: not a map experiment");
    }
    cell.value = window_mean(window, 0, window.size() - 1);
    cell.window_sem = sem(window, cell.value);
    cell.status = "ok";
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "cell " << cell_index << " (theta0=" << cell.center.theta
        << ", phi0=" << cell.center.phi << "): " << e.what();
    cell.value = kNaN;
    cell.window_sem = kNaN;
    cell.status = msg.str();
  }
  return cell;
}

EquilibriumMap equilibrium_map(const ExperimentConfig& config) {
  config.validate();
  EquilibriumMap map;
  map.kind = config.kind;
  map.grid_theta = config.grid_theta;
  map.grid_phi = config.grid_phi;
  map.window_lo = config.window_lo;
  map.window_hi = config.window_hi;
  map.ensemble = config.ensemble;
  map.seed = config.seed;
  map.cells.resize(config.grid_theta * config.grid_phi);
  // Fail fast on a non-map kind before fanning out.
  if (config.kind != ExperimentKind::kEntropyMap && config.kind != ExperimentKind::kThermoMap &&
      config.kind != ExperimentKind::kMiMap) {
    throw ConfigError("equilibrium_map: not a map experiment");
  }
  const auto n = static_cast<std::ptrdiff_t>(map.cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    map.cells[static_cast<std::size_t>(i)] = map_cell(config, static_cast<std::size_t>(i));
  }
  return map;
}

Dataset run_experiment(const ExperimentConfig& config) {
  config.validate();
  switch (config.kind) {
    case ExperimentKind::kPhasePortrait:
      return run_phase_portrait(config);
    case ExperimentKind::kEntropyDynamics:
      return run_entropy_dynamics(config);
    case ExperimentKind::kEntropyMap:
    case ExperimentKind::kThermoMap:
    case ExperimentKind::kMiMap:
      return run_map(config);
    case ExperimentKind::kMiDynamics:
      return run_mi_dynamics(config);
    case ExperimentKind::kTeqScaling:
      return run_teq_scaling(config);
    case ExperimentKind::kLyapunov:
      return run_lyapunov(config);
    case ExperimentKind::kVnVsLinear:
      return run_vn_vs_linear(config);
    case ExperimentKind::kMiSelftest:
      return run_mi_selftest(config);
  }
  throw ConfigError("unhandled experiment kind");
}

}  // namespace kicktop
