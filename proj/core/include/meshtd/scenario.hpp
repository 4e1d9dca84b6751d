#pragma once

#include <optional>
#include <string>

#include "meshtd/analysis.hpp"
#include "meshtd/config.hpp"
#include "meshtd/engine.hpp"
#include "meshtd/fdtd.hpp"

namespace meshtd {

/// Everything derived from a ScenarioConfig that the stepper needs.
struct ScenarioBuild {
  ScenarioConfig config;
  StaggeredLattice lattice;
  TmCoefficients coeffs;
  TmSource source;
  std::vector<int> probe_nodes;
  std::vector<int> image_plane_nodes;  // E-node row half a thickness past the back face
  double image_plane_y = 0.0;
  double dt = 0.0;
};

ScenarioBuild build_scenario(const ScenarioConfig &config);

/// Image-plane profile history of the FDTD reference at the meshless
/// comparison points, one row per reference step.
struct ReferenceSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> profiles;
  double dt = 0.0;
  double global_max = 0.0;
  int nearest_step(double t) const;
};

ReferenceSeries run_reference(const ScenarioConfig &config,
                              const std::vector<Point> &sample_points,
                              double t_end);

/// L2-vs-reference series: instants where the reference profile amplitude
/// clears gate_fraction of its run maximum and both profiles normalize.
ErrorSeries build_error_series(const std::vector<double> &times,
                               const std::vector<std::vector<double>> &profiles,
                               const ReferenceSeries &ref, double gate_fraction);

struct RunOutput {
  std::string directory;
  double wall_seconds = 0.0;
  long peak_rss_kb = 0;
  double dt = 0.0;
  long steps = 0;
  std::optional<FocalReport> focal;      // at the nominal snapshot step
  std::optional<FocalReport> focal_best; // best instant within +-half period
  double focal_best_time = 0.0;
  std::optional<double> l2_time_average;
  std::vector<std::string> files;
};

/// Runs the scenario, writing snapshots, probes.csv, focal_report.txt,
/// l2_error.csv when the reference is enabled, and manifest.txt.
RunOutput run_scenario(const ScenarioConfig &config);

/// One run per value of `parameter` (nodes_per_axis | alpha_c | dt_divisor
/// | stencil_size) plus a summary CSV of time-averaged L2 per value.
/// The reference solver is always enabled for sweeps.
std::vector<RunOutput> sweep(const ScenarioConfig &base,
                             const std::string &parameter,
                             const std::vector<double> &values,
                             std::string out_root = "");

std::uint64_t fnv1a64_file(const std::string &path);

}  // namespace meshtd
