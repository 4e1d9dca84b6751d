#pragma once

#include <array>
#include <string>
#include <vector>

#include "meshtd/lattice.hpp"
#include "meshtd/rbf.hpp"

namespace meshtd {

struct ConfigError : std::runtime_error {
  std::vector<std::string> violations;
  explicit ConfigError(std::vector<std::string> v);
};

/// Declarative experiment description. Defaults reproduce the reference
/// scenario: 0.03 m x 0.03 m, 61x61 nodes, 3-layer PML, 0.01 m Drude slab,
/// 30 GHz windowed source half a slab-thickness above the slab.
struct ScenarioConfig {
  // [domain]
  double extent_x_m = 0.03;
  double extent_y_m = 0.03;
  int nodes_x = 61;
  int nodes_y = 61;
  // [pml]
  int pml_layers = 3;
  int grading_order = 2;
  double reflection_coeff = 1e-3;
  // [slab]
  bool slab_enabled = true;
  double slab_front_m = 0.02;     // source-side face
  double slab_thickness_m = 0.01;
  double plasma_freq_rad_s = 2.666e11;
  double collision_freq_hz = 0.0;
  // [source]
  double frequency_hz = 30e9;
  int turn_on_cycles = 5;
  int hold_cycles = 10;
  double amplitude_v_m = 1.0;
  double source_x_m = 0.015;
  double source_y_m = 0.025;
  double injection_rate_hz = 30e9;
  double source_radius_nodes = 1.0;  // Gaussian cluster radius in spacings
  // [rbf]
  double alpha_c = 0.5;
  int stencil_size = 12;
  std::string normalization = "spacing";  // spacing | support
  bool global_stencil = false;
  // [run]
  double dt_divisor = 2.0;
  long steps = 691;
  std::vector<double> snapshot_times_s{5.7623e-10};
  int workers = 1;
  unsigned seed = 0;
  // [probes]
  std::vector<std::array<double, 2>> probe_points_m{
      {0.015, 0.025}, {0.015, 0.015}, {0.015, 0.005}};
  // [reference]
  bool reference_enabled = false;
  int cells_per_wavelength = 100;
  double courant_factor = 0.95;
  double gate_fraction = 0.25;
  // [output]
  std::string output_dir = "out";

  /// Empty when valid; otherwise one message per violated field.
  std::vector<std::string> validate() const;
  void validate_or_throw() const;

  double spacing() const { return extent_x_m / (nodes_x - 1); }
  double slab_back_m() const { return slab_front_m - slab_thickness_m; }
  AlphaNormalization alpha_normalization() const;

  std::string to_ini() const;
  static ScenarioConfig from_ini(const std::string &text);
  static ScenarioConfig from_file(const std::string &path);
  void save(const std::string &path) const;
};

}  // namespace meshtd
