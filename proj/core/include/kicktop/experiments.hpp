#pragma once

// Figure-level experiments assembled from the core modules. Every runner is
// a pure function of its configuration: the same config (seed included)
// yields byte-identical CSV and metadata.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kicktop/analysis.hpp"
#include "kicktop/bipartite.hpp"
#include "kicktop/config.hpp"
#include "kicktop/dataset.hpp"

namespace kicktop {

/// Mutual information I(x1, x2) at steps from..series.num_steps()-1; the
/// estimate at step t uses jitter seed stream_seed(jitter_seed, t).
std::vector<double> mi_series(const SampleSeries& samples, std::size_t k,
                              std::uint64_t jitter_seed, std::size_t from_step = 0);

/// Large-j linear entropy (1 - |<X>|^2)/2 of a single-top ensemble drawn
/// from `patch`, at steps 0..steps.
std::vector<double> thermo_entropy_series(const CapDistribution& patch, const KickParams& params,
                                          std::size_t count, std::size_t steps,
                                          std::uint64_t seed);

/// Linear entropy of one spin for the quantum top started in a coherent
/// state, at steps 0..steps.
std::vector<double> quantum_entropy_series(double j, const KickParams& params,
                                           const SphericalPoint& center, std::size_t steps);

struct MapCell {
  SphericalPoint center;
  double value = 0.0;       ///< time average over the window; NaN on failure
  double window_sem = 0.0;  ///< standard error of that average
  std::string status;       ///< "ok" or the failure message
};

struct EquilibriumMap {
  ExperimentKind kind;
  std::size_t grid_theta = 0;
  std::size_t grid_phi = 0;
  std::size_t window_lo = 0;
  std::size_t window_hi = 0;
  std::size_t ensemble = 0;
  std::uint64_t seed = 0;
  std::vector<MapCell> cells;  ///< row-major in theta, as angle_grid
};

/// The ensemble behind a mi-dynamics run, for dumping raw samples.
SampleSeries mi_dynamics_samples(const ExperimentConfig& config);

/// Per-cell seed: stream_seed(config.seed, cell_index).
MapCell map_cell(const ExperimentConfig& config, std::size_t cell_index);

/// Evaluates every cell of an entropy-map, thermo-map or mi-map; failing
/// cells carry their error in `status` and the map still completes.
EquilibriumMap equilibrium_map(const ExperimentConfig& config);

/// Validates and dispatches. Throws ConfigError on invalid configuration and
/// lets other domain errors propagate.
Dataset run_experiment(const ExperimentConfig& config);

}  // namespace kicktop
