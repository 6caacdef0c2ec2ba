#include "kicktop/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kicktop/error.hpp"

namespace kicktop {

namespace {
constexpr double kUnderflow = 1e-300;
}

Mat3 jacobian(const UnitVector3& state, const KickParams& params) {
  const double k = params.kappa();
  const double a = k * state.x();
  const double c = std::cos(a);
  const double s = std::sin(a);
  const double y = state.y();
  const double z = state.z();
  return {{{k * (y * c - z * s), s, c},
           {-k * (y * s + z * c), c, -s},
           {-1.0, 0.0, 0.0}}};
}

TangentFrame initial_tangent_frame(const SphericalPoint& p) {
  const double st = std::sin(p.theta);
  if (std::abs(st) < 1e-8) {
    throw std::invalid_argument("initial_tangent_frame: point is at a pole");
  }
  const double ct = std::cos(p.theta);
  const double cp = std::cos(p.phi);
  const double sp = std::sin(p.phi);
  return {{ct * cp, ct * sp, -st}, {sp, -cp, 0.0}};
}

namespace lyapunov_defaults {
std::size_t steps_per_block(double kappa) { return kappa >= 6.0 ? 10 : 5; }
}  // namespace lyapunov_defaults

LyapunovEstimate benettin_lyapunov(const SphericalPoint& start, const KickParams& params,
                                   std::size_t blocks, std::size_t steps_per_block) {
  if (blocks == 0 || steps_per_block == 0) {
    throw std::invalid_argument("benettin_lyapunov: blocks and steps_per_block must be >= 1");
  }
  UnitVector3 x = spherical_to_cartesian(start);
  TangentFrame frame = initial_tangent_frame(start);

  LyapunovEstimate est;
  est.blocks = blocks;
  est.steps_per_block = steps_per_block;
  est.block_series.reserve(blocks);

  double log_sum = 0.0;
  for (std::size_t i = 1; i <= blocks; ++i) {
    for (std::size_t t = 0; t < steps_per_block; ++t) {
      const Mat3 a = jacobian(x, params);
      frame.w1 = a * frame.w1;
      frame.w2 = a * frame.w2;
      x = classical_step(x, params);
    }

    const double alpha = norm(frame.w1);
    if (!(alpha > kUnderflow) || !std::isfinite(alpha)) {
      throw DegenerateTangentError("stretch factor alpha out of range in block " + std::to_string(i));
    }
    const Vec3 v1 = frame.w1 * (1.0 / alpha);
    // Within the tangent plane the part of w2 orthogonal to v1 lies along
    // X x v1, so the new w2 is that direction up to sign. Its length beta is
    // 1/alpha because the map preserves area on the sphere; computing it from
    // the evolved w2 would cancel away every digit once alpha passes ~1e8.
    const Vec3 n = cross(x.vec(), v1);
    const double beta = 1.0 / alpha;
    if (!(beta > kUnderflow)) {
      throw DegenerateTangentError("beta underflow in block " + std::to_string(i));
    }
    est.max_tangency_drift =
        std::max({est.max_tangency_drift, std::abs(dot(v1, x.vec())),
                  std::abs(dot(frame.w2, x.vec())) / norm(frame.w2)});
    frame.w1 = v1;
    frame.w2 = dot(frame.w2, n) < 0.0 ? n * -1.0 : n;

    log_sum += std::log(alpha);
    est.block_series.push_back(log_sum / static_cast<double>(i * steps_per_block));
  }
  est.lambda = est.block_series.back();
  return est;
}

}  // namespace kicktop
