#include "kicktop/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "kicktop/bipartite.hpp"
#include "kicktop/error.hpp"
#include "kicktop/lyapunov.hpp"

namespace kicktop {

namespace {

struct KindName {
  ExperimentKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::kPhasePortrait, "phase-portrait"},
    {ExperimentKind::kEntropyDynamics, "entropy-dynamics"},
    {ExperimentKind::kEntropyMap, "entropy-map"},
    {ExperimentKind::kThermoMap, "thermo-map"},
    {ExperimentKind::kMiDynamics, "mi-dynamics"},
    {ExperimentKind::kMiMap, "mi-map"},
    {ExperimentKind::kTeqScaling, "teq-scaling"},
    {ExperimentKind::kLyapunov, "lyapunov"},
    {ExperimentKind::kVnVsLinear, "vn-vs-linear"},
    {ExperimentKind::kMiSelftest, "mi-selftest"},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view text, std::string_view key) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

bool is_map(ExperimentKind k) {
  return k == ExperimentKind::kEntropyMap || k == ExperimentKind::kThermoMap ||
         k == ExperimentKind::kMiMap;
}

bool uses_window(ExperimentKind k) {
  return is_map(k) || k == ExperimentKind::kEntropyDynamics || k == ExperimentKind::kMiDynamics;
}

bool uses_bipartite(ExperimentKind k) {
  return k == ExperimentKind::kMiDynamics || k == ExperimentKind::kMiMap ||
         k == ExperimentKind::kTeqScaling;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "unknown";
}

ExperimentKind parse_kind(std::string_view name) {
  for (const auto& kn : kKindNames) {
    if (kn.name == name) return kn.kind;
  }
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

const std::vector<ExperimentKind>& all_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> v;
    for (const auto& kn : kKindNames) v.push_back(kn.kind);
    return v;
  }();
  return kinds;
}

double parse_angle(std::string_view text) {
  std::string s;
  for (char c : trim(text)) {
    if (c != ' ' && c != '*') s.push_back(c);
  }
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) return parse_real(s, "angle");

  double coeff = 1.0;
  const std::string head = s.substr(0, pi_pos);
  if (head == "-") {
    coeff = -1.0;
  } else if (!head.empty() && head != "+") {
    coeff = parse_real(head, "angle");
  }
  double denom = 1.0;
  const std::string tail = s.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail[0] != '/') throw ConfigError("angle: cannot parse '" + std::string(text) + "'");
    denom = parse_real(tail.substr(1), "angle");
    if (denom == 0.0) throw ConfigError("angle: division by zero");
  }
  return coeff * std::numbers::pi / denom;
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ExperimentKind::kPhasePortrait:
      c.grid_theta = portrait_presets::kGridTheta;
      c.grid_phi = portrait_presets::kGridPhi;
      c.steps = portrait_presets::kSteps;
      break;
    case ExperimentKind::kEntropyDynamics:
      c.j = 20;
      c.steps = 100;
      c.window_lo = 20;
      c.window_hi = 40;
      break;
    case ExperimentKind::kEntropyMap:
      c.j = 20;
      c.steps = 40;
      c.window_lo = 20;
      c.window_hi = 40;
      break;
    case ExperimentKind::kThermoMap:
      c.ensemble = 200;
      c.steps = 500;
      c.window_lo = 400;
      c.window_hi = 500;
      break;
    case ExperimentKind::kMiDynamics:
      break;
    case ExperimentKind::kMiMap:
      c.ensemble = 200;
      c.steps = 500;
      c.window_lo = 400;
      c.window_hi = 500;
      break;
    case ExperimentKind::kTeqScaling:
      c.kappa = 0.5;
      c.j_list = {25, 50, 100, 200};
      c.ensemble = 500;
      c.steps = 400;
      break;
    case ExperimentKind::kLyapunov:
      c.kappa = 6.0;
      break;
    case ExperimentKind::kVnVsLinear:
      c.steps = 100;
      break;
    case ExperimentKind::kMiSelftest:
      c.ensemble = 5000;
      break;
  }
  return c;
}

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> k = {
      "kappa",    "j",        "j-list", "theta0",    "phi0",      "grid-theta",
      "grid-phi", "ensemble", "steps",  "k",         "window-lo", "window-hi",
      "seed",     "spread1",  "spread2", "blocks",   "steps-per-block"};
  return k;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  if (key == "kappa") {
    kappa = parse_real(value, key);
  } else if (key == "j") {
    j = parse_real(value, key);
  } else if (key == "j-list") {
    j_list.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      if (!item.empty()) j_list.push_back(parse_real(item, key));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  } else if (key == "theta0") {
    center.theta = parse_angle(value);
  } else if (key == "phi0") {
    center.phi = parse_angle(value);
  } else if (key == "grid-theta") {
    grid_theta = parse_unsigned(value, key);
  } else if (key == "grid-phi") {
    grid_phi = parse_unsigned(value, key);
  } else if (key == "ensemble") {
    ensemble = parse_unsigned(value, key);
  } else if (key == "steps") {
    steps = parse_unsigned(value, key);
  } else if (key == "k") {
    k = parse_unsigned(value, key);
  } else if (key == "window-lo") {
    window_lo = parse_unsigned(value, key);
  } else if (key == "window-hi") {
    window_hi = parse_unsigned(value, key);
  } else if (key == "seed") {
    seed = parse_unsigned(value, key);
  } else if (key == "spread1") {
    spread1 = parse_real(value, key);
  } else if (key == "spread2") {
    spread2 = parse_real(value, key);
  } else if (key == "blocks") {
    blocks = parse_unsigned(value, key);
  } else if (key == "steps-per-block") {
    steps_per_block = parse_unsigned(value, key);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

std::size_t ExperimentConfig::block_length() const {
  return steps_per_block.value_or(lyapunov_defaults::steps_per_block(kappa));
}

void ExperimentConfig::validate() const {
  KickParams{kappa};
  const bool bip = uses_bipartite(kind);
  if (kind == ExperimentKind::kTeqScaling) {
    if (j_list.size() < 2) throw ConfigError("j-list needs at least two values");
    for (double v : j_list) validate_spin(v, 1.0);
  } else if (bip) {
    validate_spin(j, 1.0);
  } else if (kind == ExperimentKind::kEntropyDynamics || kind == ExperimentKind::kEntropyMap ||
             kind == ExperimentKind::kThermoMap) {
    validate_spin(j);
  }
  if (uses_window(kind) && !(window_lo < window_hi && window_hi <= steps)) {
    throw ConfigError("averaging window must satisfy 0 <= window-lo < window-hi <= steps");
  }
  if (is_map(kind) && (grid_theta < 2 || grid_phi < 2)) {
    throw ConfigError("grid resolutions must be at least 2");
  }
  if (kind == ExperimentKind::kPhasePortrait && (grid_theta == 0 || grid_phi == 0)) {
    throw ConfigError("phase portrait grid must be non-empty");
  }
  if (bip || kind == ExperimentKind::kMiSelftest) {
    if (k == 0) throw ConfigError("k must be at least 1");
    if (ensemble < std::max<std::size_t>(2 * (k + 1), 2 * (kDefaultNeighbors + 1))) {
      throw ConfigError("ensemble must hold at least 2 (k + 1) samples");
    }
  }
  if (kind == ExperimentKind::kThermoMap && ensemble < 2) {
    throw ConfigError("ensemble must hold at least 2 trajectories");
  }
  if (!(spread1 > 0.0) || (spread2 && !(*spread2 > 0.0))) {
    throw ConfigError("patch solid angles must be positive");
  }
  if (kind == ExperimentKind::kLyapunov && (blocks == 0 || block_length() == 0)) {
    throw ConfigError("blocks and steps-per-block must be at least 1");
  }
  if (kind == ExperimentKind::kVnVsLinear && steps < 1) {
    throw ConfigError("vn-vs-linear needs at least one interval");
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j_out = {
      {"kind", std::string(to_string(kind))},
      {"kappa", kappa},
      {"precession", KickParams::kPrecession},
      {"j", j},
      {"j_list", j_list},
      {"theta0", center.theta},
      {"phi0", center.phi},
      {"grid_theta", grid_theta},
      {"grid_phi", grid_phi},
      {"ensemble", ensemble},
      {"steps", steps},
      {"k", k},
      {"window_lo", window_lo},
      {"window_hi", window_hi},
      {"seed", seed},
      {"spread1", spread1},
      {"spread2", subsystem2_spread()},
      {"blocks", blocks},
      {"steps_per_block", block_length()},
  };
  return j_out;
}

void apply_config_stream(ExperimentConfig& config, std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    try {
      if (key == "kind") {
        if (parse_kind(value) != config.kind) {
          throw ConfigError("kind '" + std::string(value) + "' does not match the subcommand");
        }
      } else {
        config.set(key, value);
      }
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config_stream(config, in);
}

}  // namespace kicktop
