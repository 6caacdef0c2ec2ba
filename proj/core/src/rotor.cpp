#include "kicktop/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "kicktop/error.hpp"
#include "csv_format.hpp"

namespace kicktop {

UnitVector3::UnitVector3(double x, double y, double z) : v_{x, y, z} {
  const double n = norm(v_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
    throw std::invalid_argument("UnitVector3: norm " + std::to_string(n) + " is not 1");
  }
}

UnitVector3 UnitVector3::normalized(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitVector3::normalized: zero or non-finite vector");
  }
  return trusted(v * (1.0 / n));
}

KickParams::KickParams(double kappa) : kappa_(kappa) {
  if (!std::isfinite(kappa) || kappa < 0.0) {
    throw ConfigError("kappa must be a finite non-negative number, got " + std::to_string(kappa));
  }
}

UnitVector3 spherical_to_cartesian(const SphericalPoint& p) {
  const double st = std::sin(p.theta);
  return UnitVector3::trusted({st * std::cos(p.phi), st * std::sin(p.phi), std::cos(p.theta)});
}

SphericalPoint cartesian_to_spherical(const UnitVector3& v) {
  const double z = std::clamp(v.z(), -1.0, 1.0);
  const double rho = std::hypot(v.x(), v.y());
  SphericalPoint p;
  p.theta = std::atan2(rho, z);
  if (rho == 0.0) {
    p.phi = 0.0;
  } else {
    p.phi = std::atan2(v.y(), v.x());
    if (p.phi < 0.0) p.phi += 2.0 * std::numbers::pi;
    if (p.phi >= 2.0 * std::numbers::pi) p.phi = 0.0;
  }
  return p;
}

UnitVector3 kicked_rotation(const UnitVector3& v, double kick_angle) {
  const double c = std::cos(kick_angle);
  const double s = std::sin(kick_angle);
  return UnitVector3::trusted({v.z() * c + v.y() * s, v.y() * c - v.z() * s, -v.x()});
}

UnitVector3 classical_step(const UnitVector3& state, const KickParams& params) {
  return kicked_rotation(state, params.kappa() * state.x());
}

std::vector<UnitVector3> evolve_trajectory(const UnitVector3& start, const KickParams& params,
                                           std::size_t steps) {
  std::vector<UnitVector3> out;
  out.reserve(steps + 1);
  out.push_back(start);
  for (std::size_t i = 0; i < steps; ++i) out.push_back(classical_step(out.back(), params));
  return out;
}

std::vector<PortraitPoint> phase_portrait(std::span<const SphericalPoint> initials,
                                          const KickParams& params, std::size_t steps) {
  if (initials.empty()) throw std::invalid_argument("phase_portrait: no initial conditions");
  std::vector<PortraitPoint> points;
  points.reserve(initials.size() * (steps + 1));
  for (std::size_t id = 0; id < initials.size(); ++id) {
    UnitVector3 v = spherical_to_cartesian(initials[id]);
    for (std::size_t t = 0; t <= steps; ++t) {
      points.push_back({id, t, cartesian_to_spherical(v), v});
      v = classical_step(v, params);
    }
  }
  return points;
}

std::vector<SphericalPoint> angle_grid(std::size_t n_theta, std::size_t n_phi) {
  if (n_theta == 0 || n_phi == 0) throw std::invalid_argument("angle_grid: empty grid");
  std::vector<SphericalPoint> grid;
  grid.reserve(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    for (std::size_t k = 0; k < n_phi; ++k) {
      grid.push_back({(static_cast<double>(i) + 0.5) * std::numbers::pi / static_cast<double>(n_theta),
                      (static_cast<double>(k) + 0.5) * 2.0 * std::numbers::pi /
                          static_cast<double>(n_phi)});
    }
  }
  return grid;
}

void write_portrait_csv(std::ostream& os, std::span<const PortraitPoint> points) {
  os << "traj_id,step,theta,phi,x,y,z\n";
  for (const auto& p : points) {
    os << p.traj_id << ',' << p.step << ',' << detail::fmt_double(p.angles.theta) << ','
       << detail::fmt_double(p.angles.phi) << ',' << detail::fmt_double(p.position.x()) << ','
       << detail::fmt_double(p.position.y()) << ',' << detail::fmt_double(p.position.z()) << '\n';
  }
}

}  // namespace kicktop
