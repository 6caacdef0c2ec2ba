#include "kicktop/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kicktop/bipartite.hpp"
#include "kicktop/error.hpp"

namespace kicktop {

using cd = std::complex<double>;

namespace {

constexpr double kBlochTolerance = 1e-10;

// sqrt(j(j+1) - m(m+1)): the J+ element taking m to m+1.
double raising(double j, double m) { return std::sqrt(std::max(0.0, j * (j + 1) - m * (m + 1))); }

double checked_bloch_norm(const Vec3& r) {
  const double n = norm(r);
  if (!(n <= 1.0 + kBlochTolerance)) {
    throw std::invalid_argument("Bloch vector norm " + std::to_string(n) + " exceeds 1");
  }
  return std::min(n, 1.0);
}

}  // namespace

std::size_t spin_dimension(double j) {
  validate_spin(j);
  return static_cast<std::size_t>(std::lround(2.0 * j)) + 1;
}

SpinOperators SpinOperators::make(double j) {
  const auto dim = static_cast<Eigen::Index>(spin_dimension(j));
  SpinOperators ops;
  ops.j = j;
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(dim, dim);
  ops.jz = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double m = j - static_cast<double>(i);
    ops.jz(i, i) = m;
    if (i > 0) jp(i - 1, i) = raising(j, m);
  }
  const Eigen::MatrixXcd jm = jp.adjoint();
  ops.jx = 0.5 * (jp + jm);
  ops.jy = cd(0.0, -0.5) * (jp - jm);
  return ops;
}

SpinState coherent_state(double j, double theta0, double phi0) {
  const auto dim = static_cast<Eigen::Index>(spin_dimension(j));
  const double c = std::cos(0.5 * theta0);
  const double s = std::sin(0.5 * theta0);
  const double log_norm = std::lgamma(2.0 * j + 1.0);

  SpinState state;
  state.j = j;
  state.amplitudes.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double up = 2.0 * j - static_cast<double>(i);  // j + m
    const double down = static_cast<double>(i);         // j - m
    double magnitude;
    if ((up > 0 && c == 0.0) || (down > 0 && s == 0.0)) {
      magnitude = 0.0;
    } else {
      double log_mag = 0.5 * (log_norm - std::lgamma(up + 1.0) - std::lgamma(down + 1.0));
      if (up > 0) log_mag += up * std::log(std::abs(c));
      if (down > 0) log_mag += down * std::log(std::abs(s));
      magnitude = std::exp(log_mag);
      if ((up > 0 && c < 0 && std::fmod(up, 2.0) == 1.0) ^
          (down > 0 && s < 0 && std::fmod(down, 2.0) == 1.0)) {
        magnitude = -magnitude;
      }
    }
    state.amplitudes(i) = std::polar(magnitude, down * phi0);
  }
  return state;
}

std::shared_ptr<const Eigen::MatrixXcd> quarter_turn_about_y(double j) {
  static std::mutex mutex;
  static std::map<long, std::shared_ptr<const Eigen::MatrixXcd>> cache;

  const long key = std::lround(2.0 * j);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  const SpinOperators ops = SpinOperators::make(j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(ops.jy);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition of Jy failed");
  const Eigen::VectorXcd phases =
      (eig.eigenvalues().cast<cd>() * cd(0.0, -0.5 * std::numbers::pi)).array().exp();
  auto rot = std::make_shared<const Eigen::MatrixXcd>(eig.eigenvectors() * phases.asDiagonal() *
                                                      eig.eigenvectors().adjoint());

  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rot)).first->second;
}

FloquetOperator::FloquetOperator(double j, const KickParams& params)
    : j_(j), rotation_(quarter_turn_about_y(j)) {
  const auto dim = static_cast<Eigen::Index>(spin_dimension(j));
  kick_.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double m = j - static_cast<double>(i);
    kick_(i) = std::polar(1.0, -params.kappa() * m * m / (2.0 * j));
  }
}

Eigen::MatrixXcd FloquetOperator::matrix() const { return kick_.asDiagonal() * rotation(); }

void FloquetOperator::apply(Eigen::VectorXcd& psi) const {
  scratch_.noalias() = rotation() * psi;
  psi = kick_.cwiseProduct(scratch_);
}

Eigen::MatrixXcd floquet_unitary(double j, const KickParams& params) {
  return FloquetOperator(j, params).matrix();
}

Vec3 bloch_vector(const SpinState& state) {
  const double j = state.j;
  const auto& c = state.amplitudes;
  cd plus = 0.0;
  double jz = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double m = j - static_cast<double>(i);
    jz += m * std::norm(c(i));
    if (i > 0) plus += std::conj(c(i - 1)) * c(i) * raising(j, m);
  }
  return {plus.real() / j, plus.imag() / j, jz / j};
}

std::vector<Vec3> evolve_expectations(SpinState state, const FloquetOperator& floquet,
                                      std::size_t steps) {
  if (static_cast<std::size_t>(state.amplitudes.size()) != floquet.dim() ||
      std::abs(state.j - floquet.j()) > 1e-12) {
    throw std::invalid_argument("evolve_expectations: state and operator dimensions differ");
  }
  std::vector<Vec3> out;
  out.reserve(steps + 1);
  out.push_back(bloch_vector(state));
  for (std::size_t t = 1; t <= steps; ++t) {
    floquet.apply(state.amplitudes);
    const double drift = std::abs(state.norm() - 1.0);
    if (drift > kNormDriftTolerance) {
      throw NormDriftError("state norm drifted by " + std::to_string(drift) + " at step " +
                           std::to_string(t));
    }
    out.push_back(bloch_vector(state));
  }
  return out;
}

double linear_entropy(const Vec3& r) {
  const double n = checked_bloch_norm(r);
  return 0.5 * (1.0 - n * n);
}

double von_neumann_entropy_single_spin(const Vec3& r) {
  const double n = checked_bloch_norm(r);
  double s = 0.0;
  for (const double p : {0.5 * (1.0 + n), 0.5 * (1.0 - n)}) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double thermo_limit_entropy(std::span<const UnitVector3> ensemble) {
  if (ensemble.size() < 2) throw std::invalid_argument("thermo_limit_entropy: need >= 2 members");
  Vec3 mean;
  for (const auto& v : ensemble) mean += v.vec();
  mean *= 1.0 / static_cast<double>(ensemble.size());
  return 0.5 * (1.0 - dot(mean, mean));
}

}  // namespace kicktop
