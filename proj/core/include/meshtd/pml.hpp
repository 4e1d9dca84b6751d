#pragma once

#include <vector>

#include "meshtd/constants.hpp"
#include "meshtd/lattice.hpp"

namespace meshtd {

/// Graded-profile parameters: sigma(rho) = sigma_max (rho/d)^n with
/// sigma_max from the theoretical reflection coefficient.
struct PmlSpec {
  int grading_order = 2;
  double reflection_coeff = 1e-3;
  double thickness = 0.0;     // metres
  double impedance = eta0;    // Ohm
};

/// -(n+1) ln(R_th) / (2 eta d)
double sigma_max(const PmlSpec &spec);

/// sigma_max * (rho/d)^n; rho outside [0, d] is an error.
double graded_sigma(const PmlSpec &spec, double rho);

/// Per-node electric and magnetic conductivities per axis.
struct ConductivityField {
  std::vector<double> sigma_e[3];  // S/m
  std::vector<double> sigma_m[3];  // Ohm/m
  int dim = 2;
  int size() const { return static_cast<int>(sigma_e[0].size()); }
};

/// Face/edge/corner assignment: along each axis only the conductivity for
/// that axis is graded by the node's depth; magnetic values follow the
/// matching condition sigma_m = sigma_e * mu0/eps0.
ConductivityField assign_conductivities(const std::vector<PmlDepthTag> &tags,
                                        const PmlSpec &spec, int dim);

}  // namespace meshtd
