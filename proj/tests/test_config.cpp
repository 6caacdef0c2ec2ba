#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "kicktop/config.hpp"
#include "kicktop/dataset.hpp"
#include "kicktop/error.hpp"

using namespace kicktop;
using std::numbers::pi;

TEST_CASE("kind names round trip") {
  CHECK(all_kinds().size() == 10);
  for (auto k : all_kinds()) CHECK(parse_kind(to_string(k)) == k);
  CHECK(parse_kind("mi-map") == ExperimentKind::kMiMap);
  CHECK_THROWS_AS(parse_kind("mi_map"), ConfigError);
}

TEST_CASE("angle parsing") {
  CHECK(parse_angle("3pi/4") == doctest::Approx(3 * pi / 4));
  CHECK(parse_angle("pi/10") == doctest::Approx(pi / 10));
  CHECK(parse_angle("-0.5*pi") == doctest::Approx(-pi / 2));
  CHECK(parse_angle(" 2 pi ") == doctest::Approx(2 * pi));
  CHECK(parse_angle("1.0") == 1.0);
  CHECK(parse_angle("pi") == doctest::Approx(pi));
  CHECK_THROWS_AS(parse_angle("pie"), ConfigError);
  CHECK_THROWS_AS(parse_angle("pi/0"), ConfigError);
  CHECK_THROWS_AS(parse_angle("abc"), ConfigError);
}

TEST_CASE("per-kind defaults") {
  const auto em = ExperimentConfig::defaults(ExperimentKind::kEntropyMap);
  CHECK(em.j == 20);
  CHECK(em.window_lo == 20);
  CHECK(em.window_hi == 40);
  CHECK(em.grid_theta == 32);
  const auto mm = ExperimentConfig::defaults(ExperimentKind::kMiMap);
  CHECK(mm.ensemble == 200);
  CHECK(mm.window_lo == 400);
  CHECK(mm.window_hi == 500);
  const auto ts = ExperimentConfig::defaults(ExperimentKind::kTeqScaling);
  CHECK(ts.j_list == std::vector<double>{25, 50, 100, 200});
  const auto ly = ExperimentConfig::defaults(ExperimentKind::kLyapunov);
  CHECK(ly.block_length() == 10);
  CHECK(ly.blocks == 1000);
  auto ly25 = ly;
  ly25.kappa = 2.5;
  CHECK(ly25.block_length() == 5);
  for (auto k : all_kinds()) CHECK_NOTHROW(ExperimentConfig::defaults(k).validate());
}

TEST_CASE("setting fields from text") {
  auto c = ExperimentConfig::defaults(ExperimentKind::kTeqScaling);
  c.set("kappa", "2.5");
  c.set("j-list", "10, 20 ,40");
  c.set("theta0", "pi/3");
  c.set("seed", "42");
  c.set("spread2", "0.02");
  CHECK(c.kappa == 2.5);
  CHECK(c.j_list == std::vector<double>{10, 20, 40});
  CHECK(c.center.theta == doctest::Approx(pi / 3));
  CHECK(c.seed == 42);
  CHECK(c.subsystem2_spread() == 0.02);
  CHECK_THROWS_AS(c.set("kapa", "1"), ConfigError);
  CHECK_THROWS_AS(c.set("steps", "-3"), ConfigError);
  CHECK_THROWS_AS(c.set("steps", "3.5"), ConfigError);
  CHECK_THROWS_AS(c.set("kappa", "nan"), ConfigError);
  CHECK(ExperimentConfig::keys().size() == 17);
}

TEST_CASE("validation") {
  auto check_invalid = [](ExperimentConfig c) { CHECK_THROWS_AS(c.validate(), ConfigError); };
  auto c = ExperimentConfig::defaults(ExperimentKind::kMiDynamics);
  auto bad = c;
  bad.kappa = -1;
  check_invalid(bad);
  bad = c;
  bad.window_lo = bad.window_hi;
  check_invalid(bad);
  bad = c;
  bad.window_hi = bad.steps + 1;
  check_invalid(bad);
  bad = c;
  bad.j = 0.5;
  check_invalid(bad);
  bad = c;
  bad.j = 10.25;
  check_invalid(bad);
  bad = c;
  bad.k = 0;
  check_invalid(bad);
  bad = c;
  bad.ensemble = 7;
  check_invalid(bad);
  bad = c;
  bad.spread1 = 0;
  check_invalid(bad);

  auto m = ExperimentConfig::defaults(ExperimentKind::kThermoMap);
  m.grid_phi = 1;
  check_invalid(m);
  auto t = ExperimentConfig::defaults(ExperimentKind::kTeqScaling);
  t.j_list = {50};
  check_invalid(t);
  t.j_list = {50, 0.25};
  check_invalid(t);
  auto l = ExperimentConfig::defaults(ExperimentKind::kLyapunov);
  l.blocks = 0;
  check_invalid(l);
}

TEST_CASE("config stream") {
  auto c = ExperimentConfig::defaults(ExperimentKind::kMiDynamics);
  std::istringstream good(
      "# sample\n"
      "kind = mi-dynamics\n"
      "kappa = 6.0   # chaotic\n"
      "\n"
      "theta0=3pi/4\n"
      "ensemble = 400\n");
  apply_config_stream(c, good);
  CHECK(c.kappa == 6.0);
  CHECK(c.ensemble == 400);

  std::istringstream wrong_kind("kind = lyapunov\n");
  CHECK_THROWS_WITH_AS(apply_config_stream(c, wrong_kind), doctest::Contains("line 1"), ConfigError);
  std::istringstream bad_line("kappa = 1\nnot a pair\n");
  CHECK_THROWS_WITH_AS(apply_config_stream(c, bad_line), doctest::Contains("line 2"), ConfigError);
  std::istringstream bad_value("steps = many\n");
  CHECK_THROWS_WITH_AS(apply_config_stream(c, bad_value), doctest::Contains("steps"), ConfigError);
  CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/kt.cfg"), ConfigError);
}

TEST_CASE("config json carries every field") {
  const auto j = ExperimentConfig::defaults(ExperimentKind::kMiMap).to_json();
  for (const char* key : {"kind", "kappa", "j", "j_list", "theta0", "phi0", "grid_theta", "grid_phi",
                          "ensemble", "steps", "k", "window_lo", "window_hi", "seed", "spread1",
                          "spread2", "blocks", "steps_per_block"}) {
    CHECK_MESSAGE(j.contains(key), key);
  }
  CHECK(j["kind"] == "mi-map");
  CHECK(j["spread2"].get<double>() == doctest::Approx(0.01));
}

TEST_CASE("dataset") {
  Dataset d{"demo", {"a", "b", "c"}, {}, {}};
  d.add_row({std::int64_t{1}, 0.5, std::string("ok")});
  d.add_row({std::int64_t{2}, std::nan(""), std::string("cell 3 (x, y): \"bad\"")});
  CHECK_THROWS_AS(d.add_row({1.0}), std::invalid_argument);
  std::ostringstream os;
  d.write_csv(os);
  CHECK(os.str() == "a,b,c\n1,0.5,ok\n2,nan,\"cell 3 (x, y): \"\"bad\"\"\"\n");
  const auto a = d.column("a");
  CHECK(a == std::vector<double>{1, 2});
  CHECK_THROWS_AS(d.column("c"), std::invalid_argument);
  CHECK_THROWS_AS(d.column("z"), std::invalid_argument);
}
