#include "kicktop/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "csv_format.hpp"
#include "kicktop/error.hpp"

namespace kicktop {

void validate_spin(double j, double min_j) {
  const double twice = 2.0 * j;
  if (!std::isfinite(j) || std::abs(twice - std::round(twice)) > 1e-12 || twice < 1.0) {
    throw ConfigError("spin j must be a positive half-integer, got " + std::to_string(j));
  }
  if (j < min_j) {
    throw ConfigError("spin j must be at least " + std::to_string(min_j) + ", got " +
                      std::to_string(j));
  }
}

BipartitePair BipartitePair::spin_half_split(const UnitVector3& n1, const UnitVector3& n2,
                                             double j) {
  validate_spin(j, 1.0);
  return {n1, n2, j, 0.5, j - 0.5};
}

BipartitePair bipartite_step(const BipartitePair& state, const KickParams& params) {
  const double kick = params.kappa() * (state.x1() + state.x2());
  BipartitePair next = state;
  next.n1 = kicked_rotation(state.n1, kick);
  next.n2 = kicked_rotation(state.n2, kick);
  return next;
}

CapDistribution::CapDistribution(SphericalPoint center, double solid_angle)
    : center_(center), solid_angle_(solid_angle) {
  if (!(solid_angle > 0.0) || !std::isfinite(solid_angle)) {
    throw PatchError("solid angle must be positive, got " + std::to_string(solid_angle));
  }
  const double s = std::sin(center.theta);
  if (!(s > 0.0)) {
    throw PatchError("patch centre lies on a pole (theta0 = " + std::to_string(center.theta) + ")");
  }
  width_ = std::sqrt(solid_angle / s);
  const double lo = center.theta - 0.5 * width_;
  const double hi = center.theta + 0.5 * width_;
  if (lo < 0.0 || hi > std::numbers::pi || width_ > 2.0 * std::numbers::pi) {
    throw PatchError("patch of width " + std::to_string(width_) + " around theta0 = " +
                     std::to_string(center.theta) + " overlaps a pole");
  }
  cos_lo_ = std::cos(hi);
  cos_hi_ = std::cos(lo);
}

SphericalPoint CapDistribution::draw(Rng& rng) const {
  const double c = rng.uniform(cos_lo_, cos_hi_);
  double phi = center_.phi + width_ * (rng.uniform() - 0.5);
  phi = std::fmod(phi, 2.0 * std::numbers::pi);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return {std::acos(std::clamp(c, -1.0, 1.0)), phi};
}

std::vector<SphericalPoint> sample_cap(const CapDistribution& dist, std::size_t count,
                                       std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("sample_cap: count must be at least 1");
  std::vector<SphericalPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(stream_seed(seed, i));
    out.push_back(dist.draw(rng));
  }
  return out;
}

SampleSeries::SampleSeries(std::size_t ensemble_size, double j)
    : ensemble_size_(ensemble_size), j_(j) {}

std::span<const double> SampleSeries::x1(std::size_t step) const {
  if (step >= num_steps()) throw std::out_of_range("SampleSeries: step out of range");
  return {x1_.data() + step * ensemble_size_, ensemble_size_};
}

std::span<const double> SampleSeries::x2(std::size_t step) const {
  if (step >= num_steps()) throw std::out_of_range("SampleSeries: step out of range");
  return {x2_.data() + step * ensemble_size_, ensemble_size_};
}

void SampleSeries::append(std::span<const double> x1, std::span<const double> x2) {
  if (x1.size() != ensemble_size_ || x2.size() != ensemble_size_) {
    throw std::invalid_argument("SampleSeries: ensemble size mismatch");
  }
  x1_.insert(x1_.end(), x1.begin(), x1.end());
  x2_.insert(x2_.end(), x2.begin(), x2.end());
}

SampleSeries evolve_ensemble(const EnsembleSpec& spec, const KickParams& params) {
  validate_spin(spec.j, 1.0);
  if (spec.count < 2 * (kDefaultNeighbors + 1)) {
    throw std::invalid_argument("evolve_ensemble: need at least " +
                                std::to_string(2 * (kDefaultNeighbors + 1)) + " trajectories");
  }
  std::vector<BipartitePair> members;
  members.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    Rng rng(stream_seed(spec.seed, i));
    const auto p1 = spec.subsystem1.draw(rng);
    const auto p2 = spec.subsystem2.draw(rng);
    members.push_back(BipartitePair::spin_half_split(spherical_to_cartesian(p1),
                                                     spherical_to_cartesian(p2), spec.j));
  }

  SampleSeries series(spec.count, spec.j);
  std::vector<double> x1(spec.count), x2(spec.count);
  for (std::size_t t = 0;; ++t) {
    for (std::size_t i = 0; i < spec.count; ++i) {
      x1[i] = members[i].x1();
      x2[i] = members[i].x2();
    }
    series.append(x1, x2);
    if (t == spec.steps) break;
    for (auto& m : members) m = bipartite_step(m, params);
  }
  return series;
}

EnsembleSpec default_ensemble(SphericalPoint center, double j, std::size_t count,
                              std::size_t steps, std::uint64_t seed) {
  return {CapDistribution(center, 0.25), CapDistribution(center, 1.0 / j), j, count, steps, seed};
}

void write_samples_csv(std::ostream& os, const SampleSeries& series) {
  os << "step,traj_id,x1,x2\n";
  for (std::size_t t = 0; t < series.num_steps(); ++t) {
    const auto a = series.x1(t);
    const auto b = series.x2(t);
    for (std::size_t i = 0; i < a.size(); ++i) {
      os << t << ',' << i << ',' << detail::fmt_double(a[i]) << ',' << detail::fmt_double(b[i])
         << '\n';
    }
  }
}

}  // namespace kicktop
