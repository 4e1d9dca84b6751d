#pragma once

#include <vector>

#include "meshtd/lattice.hpp"

namespace meshtd {

/// Sinusoid with a quintic smooth turn-on over m cycles, constant amplitude
/// for n cycles, and a smooth turn-off over m cycles.
struct WindowedSine {
  double frequency = 30e9;  // Hz
  int turn_on_cycles = 5;   // m
  int hold_cycles = 10;     // n
  double amplitude = 1.0;   // V/m

  double period() const { return 1.0 / frequency; }
  double active_duration() const {
    return (2 * turn_on_cycles + hold_cycles) * period();
  }
};

/// Signal value at time t (>= 0).
double evaluate(const WindowedSine &signal, double t);

/// One node's additive soft-source contribution:
/// field + signal_value * dt * rate * weight.
double inject_soft_source(double field_value, double signal_value, double dt,
                          double rate, double weight = 1.0);

/// Gaussian-weighted node cluster realizing a point soft source without
/// exciting sub-resolution lattice modes. Weights sum to one; nodes beyond
/// 3*radius are dropped. radius = 0 collapses to the single nearest node.
struct SourceCluster {
  std::vector<int> nodes;
  std::vector<double> weights;
};

SourceCluster make_source_cluster(const NodeLattice &lat, const Point &center,
                                  double radius);

}  // namespace meshtd
