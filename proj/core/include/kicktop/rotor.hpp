#pragma once

// Classical kicked top on the unit sphere.
//
// The state is the rescaled angular momentum X = J/j. One period of the map
// is a pi/2 precession about y followed by a torsional kick about z whose
// angle is proportional to the x component before the step:
//
//   X' = Re{(Z + iY) e^{-i kappa X}}
//   Y' = Im{(Z + iY) e^{-i kappa X}}
//   Z' = -X

#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <span>
#include <vector>

#include "kicktop/vec3.hpp"

namespace kicktop {

/// Point on the unit sphere. Construction checks the norm; map outputs use
/// `trusted` since the step is a composition of rotations.
class UnitVector3 {
 public:
  static constexpr double kNormTolerance = 1e-12;

  UnitVector3() = default;

  /// Throws std::invalid_argument if |v| differs from 1 by more than 1e-12.
  UnitVector3(double x, double y, double z);
  explicit UnitVector3(const Vec3& v) : UnitVector3(v.x, v.y, v.z) {}

  static UnitVector3 normalized(const Vec3& v);
  static constexpr UnitVector3 trusted(const Vec3& v) { return UnitVector3(v, 0); }

  constexpr double x() const { return v_.x; }
  constexpr double y() const { return v_.y; }
  constexpr double z() const { return v_.z; }
  constexpr const Vec3& vec() const { return v_; }

  friend constexpr bool operator==(const UnitVector3&, const UnitVector3&) = default;

 private:
  constexpr UnitVector3(const Vec3& v, int) : v_(v) {}
  Vec3 v_{0.0, 0.0, 1.0};
};

struct SphericalPoint {
  double theta = 0.0;  ///< polar angle in [0, pi]
  double phi = 0.0;    ///< azimuth in [0, 2 pi)
};

class KickParams {
 public:
  static constexpr double kPrecession = std::numbers::pi / 2;

  /// Throws ConfigError for negative or non-finite kappa.
  explicit KickParams(double kappa);

  constexpr double kappa() const { return kappa_; }

 private:
  double kappa_;
};

/// X = sin(theta)cos(phi), Y = sin(theta)sin(phi), Z = cos(theta).
UnitVector3 spherical_to_cartesian(const SphericalPoint& p);

/// Inverse of spherical_to_cartesian with phi wrapped into [0, 2 pi). At
/// the poles (x = y = 0) phi is reported as 0.
SphericalPoint cartesian_to_spherical(const UnitVector3& v);

/// The kicked precession with an explicit kick angle. The single top uses
/// kappa * X; the bipartite top shares kappa * (X1 + X2) between both
/// subsystems.
UnitVector3 kicked_rotation(const UnitVector3& v, double kick_angle);

UnitVector3 classical_step(const UnitVector3& state, const KickParams& params);

/// Returns steps + 1 states starting with `start`.
std::vector<UnitVector3> evolve_trajectory(const UnitVector3& start, const KickParams& params,
                                           std::size_t steps);

struct PortraitPoint {
  std::size_t traj_id;
  std::size_t step;
  SphericalPoint angles;
  UnitVector3 position;
};

/// Union of all trajectories started from `initials`, each tagged by the
/// index of its initial condition. Throws std::invalid_argument if empty.
std::vector<PortraitPoint> phase_portrait(std::span<const SphericalPoint> initials,
                                          const KickParams& params, std::size_t steps);

/// Uniform grid of cell centres: theta = (i + 1/2) pi / n_theta,
/// phi = (k + 1/2) 2 pi / n_phi, row-major in theta.
std::vector<SphericalPoint> angle_grid(std::size_t n_theta, std::size_t n_phi);

namespace portrait_presets {
inline constexpr double kRegularKappa = 0.5;
inline constexpr double kMixedKappa = 2.5;
inline constexpr double kChaoticKappa = 6.0;
inline constexpr std::size_t kGridTheta = 20;
inline constexpr std::size_t kGridPhi = 20;
inline constexpr std::size_t kSteps = 200;
}  // namespace portrait_presets

/// CSV columns: traj_id, step, theta, phi, x, y, z.
void write_portrait_csv(std::ostream& os, std::span<const PortraitPoint> points);

}  // namespace kicktop
