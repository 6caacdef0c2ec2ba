#pragma once

// Two-subsystem classical kicked top. J = J1 + J2 with fixed magnitudes; the
// kick couples the subsystems through a single shared angle
// kappa * (X1 + X2), where Xi = |Ji| n_i.x / j.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "kicktop/rng.hpp"
#include "kicktop/rotor.hpp"

namespace kicktop {

/// Default neighbour count of the mutual-information estimator; ensembles
/// must hold at least 2 (k + 1) members.
inline constexpr std::size_t kDefaultNeighbors = 3;

/// Throws ConfigError unless 2j is a positive integer and j >= `min_j`.
void validate_spin(double j, double min_j = 0.5);

struct BipartitePair {
  UnitVector3 n1;
  UnitVector3 n2;
  double j = 1.0;
  double magnitude1 = 0.5;  ///< |J1|
  double magnitude2 = 0.5;  ///< |J2|

  /// The spin-1/2 split: |J1| = 1/2, |J2| = j - 1/2, j >= 1.
  static BipartitePair spin_half_split(const UnitVector3& n1, const UnitVector3& n2, double j);

  double x1() const { return magnitude1 / j * n1.x(); }
  double x2() const { return magnitude2 / j * n2.x(); }
};

/// Both directions rotate with the shared kick angle computed from the
/// pre-step x components.
BipartitePair bipartite_step(const BipartitePair& state, const KickParams& params);

/// Rectangular patch of equal angular widths around `center` whose solid
/// angle, sin(theta0) * dtheta * dphi, equals `solid_angle`.
class CapDistribution {
 public:
  /// Throws PatchError if the patch would cross a pole or is degenerate.
  CapDistribution(SphericalPoint center, double solid_angle);

  const SphericalPoint& center() const { return center_; }
  double solid_angle() const { return solid_angle_; }
  /// Full angular width dtheta = dphi = sqrt(solid_angle / sin(theta0)).
  double width() const { return width_; }

  /// One point uniform in sphere area over the patch.
  SphericalPoint draw(Rng& rng) const;

 private:
  SphericalPoint center_;
  double solid_angle_;
  double width_;
  double cos_lo_;  // cos(theta0 + width/2)
  double cos_hi_;  // cos(theta0 - width/2)
};

/// Point i is drawn from the stream stream_seed(seed, i).
std::vector<SphericalPoint> sample_cap(const CapDistribution& dist, std::size_t count,
                                       std::uint64_t seed);

/// Per-step ensemble of (x1, x2) = (J1x / j, J2x / j), stored step-major.
class SampleSeries {
 public:
  SampleSeries(std::size_t ensemble_size, double j);

  std::size_t ensemble_size() const { return ensemble_size_; }
  std::size_t num_steps() const { return ensemble_size_ ? x1_.size() / ensemble_size_ : 0; }
  double j() const { return j_; }

  std::span<const double> x1(std::size_t step) const;
  std::span<const double> x2(std::size_t step) const;

  void append(std::span<const double> x1, std::span<const double> x2);

 private:
  std::size_t ensemble_size_;
  double j_;
  std::vector<double> x1_;
  std::vector<double> x2_;
};

struct EnsembleSpec {
  CapDistribution subsystem1;
  CapDistribution subsystem2;
  double j;
  std::size_t count;
  std::size_t steps;
  std::uint64_t seed;
};

/// Product-distributed initial pairs evolved under bipartite_step; records
/// post-step values at every integer step (step 0 is the initial ensemble).
/// Trajectory i draws both directions from stream_seed(seed, i).
SampleSeries evolve_ensemble(const EnsembleSpec& spec, const KickParams& params);

/// The default spreads: 1/4 for subsystem 1 and 1/j for subsystem 2, both
/// centred on `center`.
EnsembleSpec default_ensemble(SphericalPoint center, double j, std::size_t count,
                              std::size_t steps, std::uint64_t seed);

/// CSV columns: step, traj_id, x1, x2.
void write_samples_csv(std::ostream& os, const SampleSeries& series);

}  // namespace kicktop
