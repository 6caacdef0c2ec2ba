#pragma once

// Kraskov-Stoegbauer-Grassberger mutual information between two scalar
// samples (first algorithm): the k-th neighbour distance is taken in the
// joint space under the max norm, marginal neighbours are counted with a
// strict inequality, and
//
//   I = psi(k) + psi(n) - < psi(n_a + 1) + psi(n_b + 1) >      [nats]

#include <cstddef>
#include <cstdint>
#include <span>

namespace kicktop {

struct MIEstimate {
  double value = 0.0;  ///< nats
  std::size_t k = 0;
  std::size_t n = 0;
};

inline constexpr const char* kMiUnits = "nats";
inline constexpr const char* kMiVariant = "KSG-1 (max-norm joint epsilon, strict marginal counts)";
inline constexpr double kJitterScale = 1e-10;

/// Deterministic tie-breaking offset for one coordinate of the pair (a, b):
/// uniform in [-1, 1] times kJitterScale times `range`, keyed on the bit
/// patterns of a and b, the seed and the coordinate. Because it depends on
/// values only, estimates are invariant under reordering of the sample.
double pair_jitter(double a, double b, std::uint64_t seed, int coordinate, double range);

/// Both marginals are rescaled to unit standard deviation before the joint
/// max-norm search.
/// Throws std::invalid_argument for k == 0, mismatched lengths, fewer than
/// k + 2 points, or non-finite entries.
MIEstimate ksg_mi(std::span<const double> a, std::span<const double> b, std::size_t k,
                  std::uint64_t jitter_seed = 0);

}  // namespace kicktop
