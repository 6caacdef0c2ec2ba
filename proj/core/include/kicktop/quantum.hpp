#pragma once

// Quantum kicked top in the (2j+1)-dimensional |j, m> basis, ordered
// m = j, j-1, ..., -j. For states in the symmetric subspace of N = 2j
// spin-1/2 particles, the reduced state of one spin is fixed by the Bloch
// vector r = <J>/j, so single-spin entropies never need the 2^N space.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kicktop/rotor.hpp"
#include "kicktop/vec3.hpp"

namespace kicktop {

struct SpinOperators {
  double j = 0.5;
  Eigen::MatrixXcd jx;
  Eigen::MatrixXcd jy;
  Eigen::MatrixXcd jz;

  /// Standard matrix elements from J+-. Throws ConfigError if 2j is not a
  /// positive integer.
  static SpinOperators make(double j);
};

/// Dimension 2j + 1; validates j.
std::size_t spin_dimension(double j);

struct SpinState {
  double j = 0.5;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// exp{i theta0 (Jx sin phi0 - Jy cos phi0)} |j, j>, built from the closed-form
/// amplitudes
///   c_m = e^{i (j - m) phi0} sqrt(C(2j, j - m)) cos^{j+m}(theta0/2) sin^{j-m}(theta0/2)
/// which carries the same global phase as the operator exponential.
SpinState coherent_state(double j, double theta0, double phi0);

/// exp(-i (pi/2) Jy), from a Hermitian eigendecomposition of Jy. Cached per
/// j; the returned matrix is shared and immutable.
std::shared_ptr<const Eigen::MatrixXcd> quarter_turn_about_y(double j);

/// One kick period, U = exp(-i (kappa / 2j) Jz^2) exp(-i (pi/2) Jy). The kick
/// is stored as its diagonal phases exp(-i kappa m^2 / 2j).
class FloquetOperator {
 public:
  FloquetOperator(double j, const KickParams& params);

  double j() const { return j_; }
  std::size_t dim() const { return kick_.size(); }
  const Eigen::MatrixXcd& rotation() const { return *rotation_; }
  const Eigen::VectorXcd& kick_phases() const { return kick_; }

  Eigen::MatrixXcd matrix() const;
  void apply(Eigen::VectorXcd& psi) const;

 private:
  double j_;
  std::shared_ptr<const Eigen::MatrixXcd> rotation_;
  Eigen::VectorXcd kick_;
  mutable Eigen::VectorXcd scratch_;
};

Eigen::MatrixXcd floquet_unitary(double j, const KickParams& params);

/// <J>/j.
Vec3 bloch_vector(const SpinState& state);

inline constexpr double kNormDriftTolerance = 1e-8;

/// Bloch vectors after 0..steps applications of U (steps + 1 entries).
/// Throws std::invalid_argument on a dimension mismatch and NormDriftError if
/// the state norm leaves 1 by more than kNormDriftTolerance.
std::vector<Vec3> evolve_expectations(SpinState state, const FloquetOperator& floquet,
                                      std::size_t steps);

/// S = (1 - |r|^2) / 2, in [0, 1/2].
double linear_entropy(const Vec3& r);

/// -sum p ln p over the eigenvalues (1 +- |r|) / 2 of the one-spin state, in nats.
double von_neumann_entropy_single_spin(const Vec3& r);

/// Large-j estimate S = <(dX)^2> / 2 = (1 - |<X>|^2) / 2 over an ensemble of
/// classical unit vectors. Throws std::invalid_argument for fewer than 2.
double thermo_limit_entropy(std::span<const UnitVector3> ensemble);

}  // namespace kicktop
