#pragma once

#include "meshtd/engine.hpp"

namespace meshtd {

/// Split fields for the full 3D Berenger scheme: six H and six E
/// subcomponents with one ADE current each. Physical components are the
/// pairwise sums (H_y = H_yx + H_yz and so on).
struct State3D {
  std::vector<double> hyx, hyz, hxy, hxz, hzx, hzy;  // H-nodes
  std::vector<double> myx, myz, mxy, mxz, mzx, mzy;
  std::vector<double> eyx, eyz, exy, exz, ezx, ezy;  // E-nodes
  std::vector<double> jyx, jyz, jxy, jxz, jzx, jzy;
  long step = 0;

  static State3D zeros(int n_e, int n_h);
  double ex(int i) const { return exy[i] + exz[i]; }
  double ey(int i) const { return eyx[i] + eyz[i]; }
  double ez(int i) const { return ezx[i] + ezy[i]; }
  double hx(int i) const { return hxy[i] + hxz[i]; }
  double hy(int i) const { return hyx[i] + hyz[i]; }
  double hz(int i) const { return hzx[i] + hzy[i]; }
};

struct Coefficients3D {
  int n_e = 0, n_h = 0;
  double dt = 0.0;
  StencilTable h_over_e;
  StencilTable e_over_h;
  // Index 0/1/2 = conductivity axis x/y/z entering the update.
  std::vector<double> h_am[3], h_b[3], e_am[3], e_b[3];
  std::vector<double> h_c1, h_c2, e_c1, e_c2;
  std::vector<int> pinned_e;
};

Coefficients3D precompute_3d(const NodeLattice &e_lat, const NodeLattice &h_lat,
                             const StencilTable &h_over_e,
                             const StencilTable &e_over_h,
                             const ConductivityField &sigma_e_nodes,
                             const ConductivityField &sigma_h_nodes,
                             const MaterialMap &e_media,
                             const MaterialMap &h_media, double dt,
                             std::vector<int> pinned_e);

/// One leapfrog step of the 24-equation split-field scheme. The optional
/// source injects E_z (split equally) at the cluster nodes.
void step_3d(State3D &state, const Coefficients3D &coeffs,
             const TmSource *source, int workers = 1);

}  // namespace meshtd
