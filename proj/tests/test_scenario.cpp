#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "meshtd/scenario.hpp"

using namespace meshtd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ScenarioConfig small_config(const std::string &dir) {
  ScenarioConfig c;
  c.nodes_x = c.nodes_y = 21;
  c.extent_x_m = c.extent_y_m = 0.01;
  c.pml_layers = 2;
  c.slab_front_m = 0.007;
  c.slab_thickness_m = 0.003;
  c.source_x_m = 0.005;
  c.source_y_m = 0.0085;
  c.probe_points_m = {{0.005, 0.0085}};
  c.steps = 80;
  c.snapshot_times_s = {40 * step_size(c.spacing(), c.dt_divisor)};
  c.output_dir = dir;
  return c;
}

}  // namespace

TEST_CASE("run outputs and manifest checksums") {
  const std::string dir = "/tmp/meshtd_scenario_a";
  fs::remove_all(dir);
  RunOutput out = run_scenario(small_config(dir));

  CHECK(fs::exists(fs::path(dir) / "probes.csv"));
  CHECK(fs::exists(fs::path(dir) / "config.ini"));
  CHECK(fs::exists(fs::path(dir) / "manifest.txt"));

  // every file referenced by the manifest exists and its checksum matches
  std::ifstream mf(fs::path(dir) / "manifest.txt");
  std::string line;
  bool in_files = false;
  int checked = 0;
  while (std::getline(mf, line)) {
    if (line == "files:") {
      in_files = true;
      continue;
    }
    if (!in_files || line.size() < 3) continue;
    std::istringstream ss(line);
    std::string name, hash;
    std::uintmax_t bytes;
    ss >> name >> bytes >> hash;
    const fs::path p = fs::path(dir) / name;
    REQUIRE(fs::exists(p));
    CHECK(fs::file_size(p) == bytes);
    std::ostringstream want;
    want << std::hex << fnv1a64_file(p.string());
    CHECK(hash == want.str());
    ++checked;
  }
  CHECK(checked >= 3);
}

TEST_CASE("snapshot times snap to the nearest step") {
  const std::string dir = "/tmp/meshtd_scenario_b";
  fs::remove_all(dir);
  ScenarioConfig c = small_config(dir);
  const double dt = step_size(c.spacing(), c.dt_divisor);
  c.snapshot_times_s = {10.4 * dt};  // snaps to step 10
  run_scenario(c);
  const std::string manifest = slurp(fs::path(dir) / "manifest.txt");
  std::ostringstream want;
  want << "snapshot_0_realized_t_s: " << 10 * dt;
  CHECK(manifest.find(want.str()) != std::string::npos);
}

TEST_CASE("zero steps produces the manifest but no snapshots") {
  const std::string dir = "/tmp/meshtd_scenario_c";
  fs::remove_all(dir);
  ScenarioConfig c = small_config(dir);
  c.steps = 0;
  RunOutput out = run_scenario(c);
  CHECK(fs::exists(fs::path(dir) / "manifest.txt"));
  bool has_snapshot = false;
  for (const auto &f : out.files)
    if (f.find("snapshot_") == 0) has_snapshot = true;
  CHECK(!has_snapshot);
}

TEST_CASE("identical configurations give byte-identical outputs") {
  const std::string d1 = "/tmp/meshtd_scenario_d1";
  const std::string d2 = "/tmp/meshtd_scenario_d2";
  fs::remove_all(d1);
  fs::remove_all(d2);
  ScenarioConfig c1 = small_config(d1);
  ScenarioConfig c2 = small_config(d2);
  run_scenario(c1);
  run_scenario(c2);
  CHECK(slurp(fs::path(d1) / "probes.csv") == slurp(fs::path(d2) / "probes.csv"));
  for (const auto &e : fs::directory_iterator(d1)) {
    if (e.path().extension() == ".csv")
      CHECK(slurp(e.path()) ==
            slurp(fs::path(d2) / e.path().filename()));
  }
}

TEST_CASE("sweep writes a summary table") {
  const std::string root = "/tmp/meshtd_sweep_t";
  fs::remove_all(root);
  ScenarioConfig c = small_config(root);
  c.steps = 40;
  c.reference_enabled = true;
  c.cells_per_wavelength = 20;
  auto outs = sweep(c, "alpha_c", {0.5});
  CHECK(outs.size() == 1);
  CHECK(fs::exists(fs::path(root) / "sweep_alpha_c.csv"));
  CHECK_THROWS(sweep(c, "bogus", {1.0}));
}
