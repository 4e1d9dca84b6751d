#pragma once

#include <vector>

#include "meshtd/excitation.hpp"
#include "meshtd/lattice.hpp"
#include "meshtd/media.hpp"
#include "meshtd/pml.hpp"

namespace meshtd {

/// Dispersive split-field Yee reference for the 2D TM case. E_z samples sit
/// on grid corners (i*delta, j*delta) with a PEC outer ring; H_x at
/// (i*delta, (j+1/2)*delta); H_y at ((i+1/2)*delta, j*delta). Shares the
/// medium, PML-profile, and excitation formulas with the meshless engine
/// but none of its curl evaluation.
class YeeGridTM {
public:
  YeeGridTM(double extent_x, double extent_y, int cells_x, int cells_y,
            double pml_thickness, const PmlSpec &pml,
            const SlabGeometry *slab, const DrudeMedium &slab_medium,
            double courant_factor = 0.95);

  void step(const WindowedSine *signal, double rate, int src_i, int src_j);

  /// Bilinear interpolation of E_z = E_zx + E_zy. Points must lie inside
  /// the domain; values are exact at grid corners.
  std::vector<double> sample_at(const std::vector<Point> &points) const;

  double ez_at(int i, int j) const { return ezx_[id(i, j)] + ezy_[id(i, j)]; }
  // Direct field access for initial conditions.
  double &ezx_ref(int i, int j) { return ezx_[id(i, j)]; }
  double &ezy_ref(int i, int j) { return ezy_[id(i, j)]; }
  double &hx_ref(int i, int j) { return hx_[idhx(i, j)]; }
  double &hy_ref(int i, int j) { return hy_[idhy(i, j)]; }
  double dt() const { return dt_; }
  double delta() const { return delta_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  long step_count() const { return step_; }
  int nearest_i(double x) const;
  int nearest_j(double y) const;

private:
  int nx_, ny_;           // cells per axis; corners are (nx+1) x (ny+1)
  double delta_, dt_;
  double ext_x_, ext_y_;
  long step_ = 0;
  std::vector<double> ezx_, ezy_, jzx_, jzy_;      // (nx+1)*(ny+1)
  std::vector<double> hx_, mx_;                    // (nx+1)*ny
  std::vector<double> hy_, my_;                    // nx*(ny+1)
  std::vector<double> e_am_x_, e_b_x_, e_am_y_, e_b_y_, e_c2_;
  std::vector<double> hx_am_, hx_b_, hx_c2_;
  std::vector<double> hy_am_, hy_b_, hy_c2_;
  double c1_ = 1.0;
  int id(int i, int j) const { return i + (nx_ + 1) * j; }
  int idhx(int i, int j) const { return i + (nx_ + 1) * j; }
  int idhy(int i, int j) const { return i + nx_ * j; }
};

}  // namespace meshtd
