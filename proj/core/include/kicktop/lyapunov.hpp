#pragma once

// Largest Lyapunov exponent of the classical map by the Benettin procedure:
// two tangent vectors are pushed forward with the analytic Jacobian and
// re-orthonormalised by Gram-Schmidt every s steps; the exponent is the
// mean log stretch of the first vector per step.

#include <cstddef>
#include <vector>

#include "kicktop/rotor.hpp"
#include "kicktop/vec3.hpp"

namespace kicktop {

/// Partial derivatives of the map at `state`; det = 1 for every state.
Mat3 jacobian(const UnitVector3& state, const KickParams& params);

struct TangentFrame {
  Vec3 w1;
  Vec3 w2;
};

/// The (theta-hat, phi-hat) frame at `p`, up to the sign of phi-hat.
/// Throws std::invalid_argument within 1e-8 of a pole.
TangentFrame initial_tangent_frame(const SphericalPoint& p);

struct LyapunovEstimate {
  double lambda = 0.0;               ///< natural log per map step
  std::vector<double> block_series;  ///< running estimate after each block
  std::size_t blocks = 0;
  std::size_t steps_per_block = 0;
  double max_tangency_drift = 0.0;   ///< max |w . X| / |w| of the evolved vectors at block ends
};

namespace lyapunov_defaults {
inline constexpr std::size_t kBlocks = 1000;
/// 10 for strongly chaotic kicks (kappa >= 6), 5 otherwise.
std::size_t steps_per_block(double kappa);
}  // namespace lyapunov_defaults

/// Throws std::invalid_argument for n or s of zero and DegenerateTangentError
/// if a stretch factor underflows below 1e-300.
LyapunovEstimate benettin_lyapunov(const SphericalPoint& start, const KickParams& params,
                                   std::size_t blocks, std::size_t steps_per_block);

}  // namespace kicktop
