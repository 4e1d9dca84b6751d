#include <doctest.h>

#include "meshtd/config.hpp"

using namespace meshtd;

TEST_CASE("defaults reproduce the reference scenario") {
  ScenarioConfig c;
  CHECK(c.extent_x_m == 0.03);
  CHECK(c.nodes_x == 61);
  CHECK(c.pml_layers == 3);
  CHECK(c.slab_thickness_m == 0.01);
  CHECK(c.plasma_freq_rad_s == 2.666e11);
  CHECK(c.collision_freq_hz == 0.0);
  CHECK(c.frequency_hz == 30e9);
  CHECK(c.turn_on_cycles == 5);
  CHECK(c.hold_cycles == 10);
  CHECK(c.alpha_c == 0.5);
  CHECK(c.dt_divisor == 2.0);
  CHECK(c.source_y_m == 0.025);  // half a slab thickness above the front face
  CHECK(c.spacing() == doctest::Approx(0.0005));
  CHECK(c.validate().empty());
}

TEST_CASE("ini round trip is the identity") {
  ScenarioConfig c;
  c.alpha_c = 1.25;
  c.steps = 123;
  c.snapshot_times_s = {1e-10, 2.5e-10};
  c.probe_points_m = {{0.001, 0.002}};
  c.normalization = "support";
  const std::string ini = c.to_ini();
  ScenarioConfig back = ScenarioConfig::from_ini(ini);
  CHECK(back.to_ini() == ini);
  ScenarioConfig once_more = ScenarioConfig::from_ini(back.to_ini());
  CHECK(once_more.to_ini() == ini);
}

TEST_CASE("parser handles comments and partial files") {
  const std::string text =
      "# comment\n[rbf]\nalpha_c = 2.0  # inline\n\n[run]\nsteps = 42\n";
  ScenarioConfig c = ScenarioConfig::from_ini(text);
  CHECK(c.alpha_c == 2.0);
  CHECK(c.steps == 42);
  CHECK(c.nodes_x == 61);  // untouched defaults
}

TEST_CASE("validation enumerates every violated field") {
  ScenarioConfig c;
  c.extent_x_m = -1;
  c.nodes_x = 1;
  c.pml_layers = -2;
  c.reflection_coeff = 2.0;
  c.frequency_hz = 0.0;
  c.alpha_c = -0.5;
  c.dt_divisor = 0.5;
  c.workers = 0;
  auto v = c.validate();
  CHECK(v.size() >= 8);
  bool found_alpha = false;
  for (const auto &m : v)
    if (m.find("alpha_c") != std::string::npos) found_alpha = true;
  CHECK(found_alpha);
  CHECK_THROWS_AS(c.validate_or_throw(), ConfigError);
}

TEST_CASE("malformed values raise config errors") {
  CHECK_THROWS_AS(ScenarioConfig::from_ini("[run]\nsteps = many\n"), ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::from_ini("[slab]\nenabled = maybe\n"),
                  ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::from_ini("[probes]\npoints = 1;2\n"),
                  ConfigError);
}
