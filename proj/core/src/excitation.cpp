#include "meshtd/excitation.hpp"

#include <cmath>
#include <stdexcept>

#include "meshtd/constants.hpp"

namespace meshtd {

static double quintic(double x) {
  return 10.0 * x * x * x - 15.0 * x * x * x * x + 6.0 * x * x * x * x * x;
}

double evaluate(const WindowedSine &signal, double t) {
  if (t < 0) throw std::invalid_argument("t must be non-negative");
  const double tp = signal.period();
  const double m = signal.turn_on_cycles;
  const double n = signal.hold_cycles;
  const double s = std::sin(2.0 * pi * signal.frequency * t);
  double g = 0.0;
  if (t < m * tp) {
    g = m > 0 ? quintic(t / (m * tp)) : 1.0;
  } else if (t < (m + n) * tp) {
    g = 1.0;
  } else if (t < (2 * m + n) * tp) {
    // x_off rescaled by T_p so g_off runs 1 -> 0 over the turn-off cycles.
    g = m > 0 ? 1.0 - quintic((t - (m + n) * tp) / (m * tp)) : 0.0;
  }
  return signal.amplitude * g * s;
}

double inject_soft_source(double field_value, double signal_value, double dt,
                          double rate, double weight) {
  return field_value + signal_value * dt * rate * weight;
}

SourceCluster make_source_cluster(const NodeLattice &lat, const Point &center,
                                  double radius) {
  NeighborSearch search(lat);
  SourceCluster cluster;
  if (radius <= 0) {
    cluster.nodes = search.nearest(center, 1);
    cluster.weights = {1.0};
    return cluster;
  }
  const double cutoff2 = 9.0 * radius * radius;
  // Gather candidates by expanding k until the farthest exceeds the cutoff.
  int k = 8;
  std::vector<int> nbr;
  while (true) {
    k = std::min(2 * k, lat.size());
    nbr = search.nearest(center, k);
    double far2 = 0.0;
    for (int a = 0; a < lat.dim; ++a) {
      const double d = center[a] - lat.positions[nbr.back()][a];
      far2 += d * d;
    }
    if (far2 > cutoff2 || k == lat.size()) break;
  }
  double total = 0.0;
  for (int i : nbr) {
    double r2 = 0.0;
    for (int a = 0; a < lat.dim; ++a) {
      const double d = center[a] - lat.positions[i][a];
      r2 += d * d;
    }
    if (r2 > cutoff2) continue;
    const double w = std::exp(-r2 / (2.0 * radius * radius));
    cluster.nodes.push_back(i);
    cluster.weights.push_back(w);
    total += w;
  }
  for (double &w : cluster.weights) w /= total;
  return cluster;
}

}  // namespace meshtd
