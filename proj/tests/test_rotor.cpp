#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "kicktop/error.hpp"
#include "kicktop/rotor.hpp"
#include "support.hpp"

using namespace kicktop;
using std::numbers::pi;

namespace {
void check_vec(const UnitVector3& v, double x, double y, double z, double tol) {
  CHECK(std::abs(v.x() - x) < tol);
  CHECK(std::abs(v.y() - y) < tol);
  CHECK(std::abs(v.z() - z) < tol);
}
}  // namespace

TEST_CASE("unit vector construction checks the norm") {
  CHECK_NOTHROW(UnitVector3(0.0, 0.0, 1.0));
  CHECK_THROWS_AS(UnitVector3(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(UnitVector3(0.0, 0.0, 1.0 + 1e-9), std::invalid_argument);
  const auto n = UnitVector3::normalized({3.0, 0.0, 4.0});
  CHECK(n.x() == doctest::Approx(0.6));
  CHECK_THROWS_AS(UnitVector3::normalized({0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("kick strength must be finite and non-negative") {
  CHECK_NOTHROW(KickParams{0.0});
  CHECK_THROWS_AS(KickParams{-0.1}, ConfigError);
  CHECK_THROWS_AS(KickParams{std::nan("")}, ConfigError);
  CHECK_THROWS_AS(KickParams{INFINITY}, ConfigError);
}

TEST_CASE("spherical to cartesian") {
  check_vec(spherical_to_cartesian({0.0, 1.234}), 0.0, 0.0, 1.0, 1e-15);
  check_vec(spherical_to_cartesian({pi / 2, 0.0}), 1.0, 0.0, 0.0, 1e-15);
  check_vec(spherical_to_cartesian({3 * pi / 4, 3 * pi / 4}), -0.5, 0.5, -0.7071067811865475, 1e-15);
}

TEST_CASE("spherical round trip away from the poles") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto p = kt_test::random_off_pole(rng, 1e-3);
    const auto q = cartesian_to_spherical(spherical_to_cartesian(p));
    CHECK(std::abs(q.theta - p.theta) < 1e-10);
    CHECK(std::abs(q.phi - p.phi) < 1e-10);
  }
  CHECK(cartesian_to_spherical(UnitVector3(0, 0, -1)).phi == 0.0);
}

TEST_CASE("classical step oracles") {
  check_vec(classical_step(UnitVector3(1, 0, 0), KickParams(0.0)), 0.0, 0.0, -1.0, 1e-15);
  for (double k : {0.0, 0.5, 2.5, 6.0, 17.0}) {
    check_vec(classical_step(UnitVector3(0, 1, 0), KickParams(k)), 0.0, 1.0, 0.0, 1e-14);
    check_vec(classical_step(UnitVector3(0, -1, 0), KickParams(k)), 0.0, -1.0, 0.0, 1e-14);
  }
  const auto start = spherical_to_cartesian({3 * pi / 4, 3 * pi / 4});
  check_vec(classical_step(start, KickParams(2.5)), -0.6974588903872496, -0.5133722783904353, 0.5,
            1e-12);
}

TEST_CASE("trajectory length and period four at zero kick") {
  const auto t0 = evolve_trajectory(UnitVector3(1, 0, 0), KickParams(1.0), 0);
  REQUIRE(t0.size() == 1);
  const auto t4 = evolve_trajectory(UnitVector3(1, 0, 0), KickParams(0.0), 4);
  REQUIRE(t4.size() == 5);
  check_vec(t4[4], 1.0, 0.0, 0.0, 1e-15);
}

TEST_CASE("property: norm preserved by every step") {
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const auto v = kt_test::random_unit(rng);
    const auto w = classical_step(v, KickParams(kt_test::random_kappa(rng)));
    CHECK(std::abs(norm(w.vec()) - 1.0) < 1e-12);
  }
}

TEST_CASE("property: fourth iterate at zero kick is the identity") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto v = kt_test::random_unit(rng);
    const auto t = evolve_trajectory(v, KickParams(0.0), 4);
    CHECK(norm(t[4].vec() - v.vec()) < 1e-12);
  }
}

TEST_CASE("long run norm drift") {
  UnitVector3 v = spherical_to_cartesian({1.0, 0.3});
  const KickParams p(3.0);
  for (int i = 0; i < 1000000; ++i) v = classical_step(v, p);
  CHECK(std::abs(norm(v.vec()) - 1.0) < 1e-12);
}

TEST_CASE("property: determinism") {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto v = kt_test::random_unit(rng);
    const KickParams p(kt_test::random_kappa(rng));
    CHECK(evolve_trajectory(v, p, 50) == evolve_trajectory(v, p, 50));
  }
}

TEST_CASE("phase portrait") {
  SUBCASE("fixed point start stays put") {
    for (const auto& v : evolve_trajectory(UnitVector3(0, 1, 0), KickParams(2.5), 20)) {
      CHECK(v == UnitVector3(0, 1, 0));
    }
    // cos(pi/2) is not exactly zero, so the portrait start sits 1e-16 off
    // the fixed point; at this kick the point is elliptic and stays close.
    const std::vector<SphericalPoint> init{{pi / 2, pi / 2}};
    const auto pts = phase_portrait(init, KickParams(0.5), 20);
    REQUIRE(pts.size() == 21);
    for (const auto& p : pts) CHECK(norm(p.position.vec() - pts[0].position.vec()) < 1e-14);
  }
  SUBCASE("tags and ordering") {
    const auto grid = angle_grid(3, 4);
    REQUIRE(grid.size() == 12);
    CHECK(grid[0].theta == doctest::Approx(pi / 6));
    CHECK(grid[0].phi == doctest::Approx(pi / 4));
    CHECK(grid[5].theta == doctest::Approx(pi / 2));
    const auto pts = phase_portrait(grid, KickParams(0.5), 3);
    REQUIRE(pts.size() == 48);
    CHECK(pts[4].traj_id == 1);
    CHECK(pts[4].step == 0);
  }
  SUBCASE("empty input rejected") {
    CHECK_THROWS_AS(phase_portrait({}, KickParams(1.0), 3), std::invalid_argument);
    CHECK_THROWS_AS(angle_grid(0, 3), std::invalid_argument);
  }
  SUBCASE("csv schema") {
    const std::vector<SphericalPoint> init{{1.0, 1.0}};
    const auto pts = phase_portrait(init, KickParams(0.5), 1);
    std::ostringstream os;
    write_portrait_csv(os, pts);
    const auto text = os.str();
    CHECK(text.rfind("traj_id,step,theta,phi,x,y,z\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  }
}

TEST_CASE("chaotic orbit covers the sphere") {
  UnitVector3 v = spherical_to_cartesian({3 * pi / 4, 3 * pi / 4});
  const KickParams p(6.0);
  std::set<int> visited;
  for (int i = 0; i < 10000; ++i) {
    const auto s = cartesian_to_spherical(v);
    const int row = std::min(19, static_cast<int>(s.theta / pi * 20));
    const int col = std::min(19, static_cast<int>(s.phi / (2 * pi) * 20));
    visited.insert(row * 20 + col);
    v = classical_step(v, p);
  }
  CHECK(400 - static_cast<int>(visited.size()) < 40);
}
