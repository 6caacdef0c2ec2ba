#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kicktop/rotor.hpp"

namespace kicktop {

enum class ExperimentKind {
  kPhasePortrait,
  kEntropyDynamics,
  kEntropyMap,
  kThermoMap,
  kMiDynamics,
  kMiMap,
  kTeqScaling,
  kLyapunov,
  kVnVsLinear,
  kMiSelftest,
};

std::string_view to_string(ExperimentKind kind);
/// Throws ConfigError for unknown names.
ExperimentKind parse_kind(std::string_view name);
const std::vector<ExperimentKind>& all_kinds();

/// Parses a real number or a multiple of pi: "1.0", "pi/3", "3pi/4",
/// "-0.5*pi", "2 pi". Throws ConfigError on anything else.
double parse_angle(std::string_view text);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kMiDynamics;
  double kappa = 2.5;
  double j = 100.0;
  std::vector<double> j_list;  ///< teq-scaling only
  SphericalPoint center{0.75 * std::numbers::pi, 0.75 * std::numbers::pi};
  std::size_t grid_theta = 32;
  std::size_t grid_phi = 32;
  std::size_t ensemble = 1000;
  std::size_t steps = 100;
  std::size_t k = 3;
  std::size_t window_lo = 80;
  std::size_t window_hi = 100;
  std::uint64_t seed = 1;
  double spread1 = 0.25;  ///< solid angle of the subsystem-1 patch
  /// Solid angle of the subsystem-2 patch, also used for the single-top
  /// ensembles of thermo-map; 1/j when unset.
  std::optional<double> spread2;
  std::size_t blocks = 1000;
  std::optional<std::size_t> steps_per_block;  ///< kappa-dependent default when unset

  /// Defaults for each kind, taken from the reference runs (see README).
  static ExperimentConfig defaults(ExperimentKind kind);

  /// Sets one field from text. Keys: kappa, j, j-list (comma separated),
  /// theta0, phi0, grid-theta, grid-phi, ensemble, steps, k, window-lo,
  /// window-hi, seed, spread1, spread2, blocks, steps-per-block.
  void set(std::string_view key, std::string_view value);

  static const std::vector<std::string>& keys();

  double subsystem2_spread() const { return spread2.value_or(1.0 / j); }
  std::size_t block_length() const;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  nlohmann::json to_json() const;
};

/// Applies "key = value" lines ('#' starts a comment, blank lines ignored).
/// A "kind" key, if present, must match config.kind. Throws ConfigError with
/// the offending line number.
void apply_config_stream(ExperimentConfig& config, std::istream& in);
void apply_config_file(ExperimentConfig& config, const std::string& path);

}  // namespace kicktop
