#include "meshtd/media.hpp"

#include <cmath>
#include <stdexcept>

#include "meshtd/constants.hpp"

namespace meshtd {

static std::complex<double> drude_factor(const DrudeMedium &m, double omega) {
  if (omega <= 0) throw std::invalid_argument("omega must be positive");
  if (m.plasma_freq == 0.0) return {1.0, 0.0};
  // e^{+j w t} convention: j w <-> d/dt, denominator w^2 - j gamma w.
  const std::complex<double> den(omega * omega, -m.collision_freq * omega);
  return 1.0 - m.plasma_freq * m.plasma_freq / den;
}

std::complex<double> permittivity(const DrudeMedium &m, double omega) {
  return eps0 * drude_factor(m, omega);
}

std::complex<double> permeability(const DrudeMedium &m, double omega) {
  return mu0 * drude_factor(m, omega);
}

std::complex<double> relative_permittivity(const DrudeMedium &m, double omega) {
  return drude_factor(m, omega);
}

double lh_plasma_frequency_for(double omega0, double target_eps_r) {
  if (target_eps_r >= 1.0)
    throw std::invalid_argument("target relative permittivity must be < 1");
  return omega0 * std::sqrt(1.0 - target_eps_r);
}

MaterialMap MaterialMap::vacuum(const NodeLattice &lat) {
  MaterialMap m;
  m.in_slab.assign(lat.positions.size(), 0);
  return m;
}

MaterialMap MaterialMap::with_slab(const NodeLattice &lat,
                                   const SlabGeometry &geom,
                                   const DrudeMedium &medium) {
  MaterialMap m;
  m.slab = medium;
  m.geometry = geom;
  m.has_slab = true;
  m.in_slab.resize(lat.positions.size());
  for (size_t i = 0; i < lat.positions.size(); ++i)
    m.in_slab[i] = geom.contains(lat.positions[i]) ? 1 : 0;
  return m;
}

}  // namespace meshtd
