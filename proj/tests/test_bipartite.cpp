#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kicktop/bipartite.hpp"
#include "kicktop/error.hpp"
#include "support.hpp"

using namespace kicktop;
using std::numbers::pi;

TEST_CASE("spin validation") {
  CHECK_NOTHROW(validate_spin(0.5));
  CHECK_NOTHROW(validate_spin(100));
  CHECK_THROWS_AS(validate_spin(0.3), ConfigError);
  CHECK_THROWS_AS(validate_spin(0.0), ConfigError);
  CHECK_THROWS_AS(validate_spin(0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(BipartitePair::spin_half_split(UnitVector3(1, 0, 0), UnitVector3(1, 0, 0), 0.5),
                  ConfigError);
}

TEST_CASE("spin half split magnitudes and scaled components") {
  const auto p = BipartitePair::spin_half_split(UnitVector3(1, 0, 0), UnitVector3(1, 0, 0), 100);
  CHECK(p.magnitude1 == 0.5);
  CHECK(p.magnitude2 == 99.5);
  CHECK(p.x1() == doctest::Approx(0.005));
  CHECK(p.x2() == doctest::Approx(0.995));
}

TEST_CASE("zero kick decouples into quarter turns") {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto a = kt_test::random_unit(rng);
    const auto b = kt_test::random_unit(rng);
    const auto s = bipartite_step(BipartitePair::spin_half_split(a, b, 10), KickParams(0.0));
    CHECK(norm(s.n1.vec() - Vec3{a.z(), a.y(), -a.x()}) < 1e-15);
    CHECK(norm(s.n2.vec() - Vec3{b.z(), b.y(), -b.x()}) < 1e-15);
  }
}

TEST_CASE("large j: subsystem 2 follows the single top") {
  const auto n1 = spherical_to_cartesian({1.0, 2.0});
  const auto start = spherical_to_cartesian({3 * pi / 4, 3 * pi / 4});
  const KickParams p(0.5);
  double prev = INFINITY;
  for (double j : {10.0, 100.0, 1000.0, 10000.0}) {
    auto pair = BipartitePair::spin_half_split(n1, start, j);
    UnitVector3 single = start;
    double dev = 0.0;
    for (int t = 0; t < 50; ++t) {
      pair = bipartite_step(pair, p);
      single = classical_step(single, p);
      dev = std::max(dev, norm(pair.n2.vec() - single.vec()));
    }
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("property: both norms conserved") {
  Rng rng(42);
  auto pair = BipartitePair::spin_half_split(kt_test::random_unit(rng), kt_test::random_unit(rng), 50);
  const KickParams p(2.5);
  for (int t = 0; t < 100000; ++t) pair = bipartite_step(pair, p);
  CHECK(std::abs(norm(pair.n1.vec()) - 1.0) < 1e-12);
  CHECK(std::abs(norm(pair.n2.vec()) - 1.0) < 1e-12);
}

TEST_CASE("property: swapping labels commutes with the step") {
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    BipartitePair a{kt_test::random_unit(rng), kt_test::random_unit(rng), 20.0, 0.5, 19.5};
    BipartitePair b{a.n2, a.n1, 20.0, 19.5, 0.5};
    const KickParams p(kt_test::random_kappa(rng));
    for (int t = 0; t < 20; ++t) {
      a = bipartite_step(a, p);
      b = bipartite_step(b, p);
    }
    CHECK(a.n1 == b.n2);
    CHECK(a.n2 == b.n1);
  }
}

TEST_CASE("patch geometry") {
  const CapDistribution d({3 * pi / 4, 3 * pi / 4}, 1.0 / 100);
  CHECK(std::abs(d.width() - 0.11892071150027211) < 1e-12);
  CHECK_THROWS_AS(CapDistribution({0.05, 1.0}, 0.25), PatchError);
  CHECK_THROWS_AS(CapDistribution({pi - 0.05, 1.0}, 0.25), PatchError);
  CHECK_THROWS_AS(CapDistribution({0.0, 1.0}, 0.01), PatchError);
  CHECK_THROWS_AS(CapDistribution({1.0, 1.0}, 0.0), PatchError);
  CHECK_THROWS_AS(CapDistribution({1.0, 1.0}, -1.0), PatchError);
}

TEST_CASE("samples stay inside the patch") {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = kt_test::random_off_pole(rng, 0.6);
    const CapDistribution d(c, rng.uniform(0.001, 0.25));
    const double h = 0.5 * d.width();
    for (const auto& p : sample_cap(d, 500, trial)) {
      CHECK(p.theta >= c.theta - h - 1e-12);
      CHECK(p.theta <= c.theta + h + 1e-12);
      double dphi = std::remainder(p.phi - c.phi, 2 * pi);
      CHECK(std::abs(dphi) <= h + 1e-12);
      CHECK(p.phi >= 0.0);
      CHECK(p.phi < 2 * pi);
    }
  }
}

TEST_CASE("sample means") {
  // Area weighting shifts the theta mean of a wide patch towards the
  // equator, so compare against the exact area-weighted mean; phi is
  // symmetric about the centre.
  auto area_mean_theta = [](double lo, double hi) {
    const double num = (std::sin(hi) - hi * std::cos(hi)) - (std::sin(lo) - lo * std::cos(lo));
    return num / (std::cos(lo) - std::cos(hi));
  };
  for (double omega : {0.01, 0.25}) {
    const SphericalPoint c{3 * pi / 4, 3 * pi / 4};
    const CapDistribution d(c, omega);
    const auto pts = sample_cap(d, 1000, 7);
    double mt = 0, mp = 0, vt = 0, vp = 0;
    for (const auto& p : pts) {
      mt += p.theta;
      mp += p.phi;
    }
    mt /= 1000;
    mp /= 1000;
    for (const auto& p : pts) {
      vt += (p.theta - mt) * (p.theta - mt);
      vp += (p.phi - mp) * (p.phi - mp);
    }
    const double se_t = std::sqrt(vt / 999 / 1000), se_p = std::sqrt(vp / 999 / 1000);
    const double h = 0.5 * d.width();
    CHECK(std::abs(mt - area_mean_theta(c.theta - h, c.theta + h)) < 3 * se_t);
    CHECK(std::abs(mp - c.phi) < 3 * se_p);
    if (omega < 0.05) CHECK(std::abs(mt - c.theta) < 3 * se_t);
  }
}

TEST_CASE("ensemble evolution") {
  const auto spec = default_ensemble({3 * pi / 4, 3 * pi / 4}, 100, 500, 0, 3);
  CHECK(spec.subsystem1.solid_angle() == 0.25);
  CHECK(spec.subsystem2.solid_angle() == doctest::Approx(0.01));

  SUBCASE("zero steps keeps the initial sample") {
    const auto s = evolve_ensemble(spec, KickParams(2.5));
    CHECK(s.num_steps() == 1);
    CHECK(s.ensemble_size() == 500);
  }
  SUBCASE("bounds and reproducibility") {
    auto sp = spec;
    sp.steps = 30;
    const auto a = evolve_ensemble(sp, KickParams(2.5));
    const auto b = evolve_ensemble(sp, KickParams(2.5));
    REQUIRE(a.num_steps() == 31);
    for (std::size_t t = 0; t < a.num_steps(); ++t) {
      CHECK(std::equal(a.x1(t).begin(), a.x1(t).end(), b.x1(t).begin()));
      CHECK(std::equal(a.x2(t).begin(), a.x2(t).end(), b.x2(t).begin()));
      for (double v : a.x1(t)) CHECK(std::abs(v) <= 0.5 / 100 + 1e-15);
      for (double v : a.x2(t)) CHECK(std::abs(v) <= 99.5 / 100 + 1e-15);
    }
  }
  SUBCASE("zero kick is period four") {
    auto sp = spec;
    sp.steps = 8;
    const auto s = evolve_ensemble(sp, KickParams(0.0));
    for (std::size_t i = 0; i < 500; ++i) {
      CHECK(std::abs(s.x1(4)[i] - s.x1(0)[i]) < 1e-15);
      CHECK(std::abs(s.x2(8)[i] - s.x2(0)[i]) < 1e-14);
    }
  }
  SUBCASE("initial product form is uncorrelated") {
    auto sp = spec;
    sp.count = 1000;
    const auto s = evolve_ensemble(sp, KickParams(2.5));
    const auto a = s.x1(0), b = s.x2(0);
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
      ma += a[i];
      mb += b[i];
    }
    ma /= 1000;
    mb /= 1000;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
      sab += (a[i] - ma) * (b[i] - mb);
      saa += (a[i] - ma) * (a[i] - ma);
      sbb += (b[i] - mb) * (b[i] - mb);
    }
    CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 0.1);
  }
  SUBCASE("too few members rejected") {
    auto sp = spec;
    sp.count = 5;
    CHECK_THROWS_AS(evolve_ensemble(sp, KickParams(2.5)), std::invalid_argument);
  }
}

TEST_CASE("sample series storage and csv") {
  SampleSeries s(2, 10);
  const double a[] = {0.01, 0.02}, b[] = {0.5, -0.5};
  s.append(a, b);
  s.append(b, a);
  CHECK(s.num_steps() == 2);
  CHECK(s.x1(1)[0] == 0.5);
  const double bad[] = {1.0};
  CHECK_THROWS_AS(s.append(bad, bad), std::invalid_argument);
  std::ostringstream os;
  write_samples_csv(os, s);
  CHECK(os.str() == "step,traj_id,x1,x2\n0,0,0.01,0.5\n0,1,0.02,-0.5\n1,0,0.5,0.01\n1,1,-0.5,0.02\n");
}
