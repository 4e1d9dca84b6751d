#pragma once

#include <complex>
#include <vector>

#include "meshtd/lattice.hpp"

namespace meshtd {

/// Drude dispersion: eps(w) = eps0 (1 - wp^2 / (w^2 - j*gamma*w)),
/// and the mirror formula for mu(w). wp = 0 reduces to the background.
struct DrudeMedium {
  double plasma_freq = 0.0;     // rad/s
  double collision_freq = 0.0;  // 1/s
};

std::complex<double> permittivity(const DrudeMedium &m, double omega);
std::complex<double> permeability(const DrudeMedium &m, double omega);
std::complex<double> relative_permittivity(const DrudeMedium &m, double omega);

/// Plasma frequency giving the requested relative permittivity at omega0
/// for a lossless Drude medium (target -1 -> sqrt(2)*omega0).
double lh_plasma_frequency_for(double omega0, double target_eps_r);

/// Axis-aligned slab between front and back coordinates along one axis.
/// A node belongs to the slab iff its coordinate lies inside the closed
/// interval (boundary-coincident nodes take the slab medium).
struct SlabGeometry {
  int axis = 1;
  double lo = 0.0;  // metres
  double hi = 0.0;
  bool contains(const Point &p) const { return p[axis] >= lo && p[axis] <= hi; }
};

/// Per-node medium assignment for one node set.
struct MaterialMap {
  DrudeMedium slab;
  SlabGeometry geometry;
  bool has_slab = false;
  std::vector<char> in_slab;  // per node

  static MaterialMap vacuum(const NodeLattice &lat);
  static MaterialMap with_slab(const NodeLattice &lat, const SlabGeometry &geom,
                               const DrudeMedium &medium);
  DrudeMedium at(int node) const {
    return (has_slab && in_slab[node]) ? slab : DrudeMedium{};
  }
};

}  // namespace meshtd
