#pragma once

// Hand-rolled generators for property tests. Each property draws its cases
// from a fixed seed so failures reproduce.

#include <cmath>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

#include "kicktop/rng.hpp"
#include "kicktop/rotor.hpp"

namespace kt_test {

inline kicktop::UnitVector3 random_unit(kicktop::Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(1.0 - z * z);
  return kicktop::UnitVector3::normalized({r * std::cos(phi), r * std::sin(phi), z});
}

inline kicktop::SphericalPoint random_off_pole(kicktop::Rng& rng, double margin = 0.1) {
  return {rng.uniform(margin, std::numbers::pi - margin), rng.uniform(0.0, 2.0 * std::numbers::pi)};
}

inline double random_kappa(kicktop::Rng& rng) { return rng.uniform(0.0, 8.0); }

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

/// exp(A) by scaling and squaring a truncated Taylor series; an oracle that
/// shares no code with the eigendecomposition used by the library.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& a) {
  int squarings = 0;
  double scale = 1.0;
  const double n1 = a.cwiseAbs().colwise().sum().maxCoeff();
  while (n1 * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd x = a * scale;
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace kt_test
