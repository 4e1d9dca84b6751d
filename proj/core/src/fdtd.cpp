#include "meshtd/fdtd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "meshtd/constants.hpp"

namespace meshtd {

static double face_depth(double v, double lo_face, double hi_face, double d) {
  const double lo = lo_face + d - v;
  const double hi = v - (hi_face - d);
  return std::max(0.0, std::max(lo, hi));
}

YeeGridTM::YeeGridTM(double extent_x, double extent_y, int cells_x, int cells_y,
                     double pml_thickness, const PmlSpec &pml,
                     const SlabGeometry *slab, const DrudeMedium &slab_medium,
                     double courant_factor)
    : nx_(cells_x), ny_(cells_y), ext_x_(extent_x), ext_y_(extent_y) {
  if (cells_x < 2 || cells_y < 2) throw std::invalid_argument("grid too small");
  delta_ = extent_x / cells_x;
  if (std::abs(extent_y / cells_y - delta_) > 1e-12 * delta_)
    throw std::invalid_argument("anisotropic cells are not supported");
  dt_ = courant_factor * delta_ / (c0 * std::sqrt(2.0));

  const int ne = (nx_ + 1) * (ny_ + 1);
  ezx_.assign(ne, 0.0);
  ezy_.assign(ne, 0.0);
  jzx_.assign(ne, 0.0);
  jzy_.assign(ne, 0.0);
  hx_.assign((nx_ + 1) * ny_, 0.0);
  mx_.assign((nx_ + 1) * ny_, 0.0);
  hy_.assign(nx_ * (ny_ + 1), 0.0);
  my_.assign(nx_ * (ny_ + 1), 0.0);

  PmlSpec spec = pml;
  spec.thickness = pml_thickness;
  auto sigma = [&](double depth) {
    return depth > 0 ? graded_sigma(spec, std::min(depth, pml_thickness)) : 0.0;
  };
  auto fill_e = [&](double x_or_y, double xi, double &am, double &b) {
    const double s = x_or_y * dt_ / (2.0 * xi);
    am = (1.0 - s) / (1.0 + s);
    b = (dt_ / xi) / (1.0 + s);
  };

  e_am_x_.resize(ne);
  e_b_x_.resize(ne);
  e_am_y_.resize(ne);
  e_b_y_.resize(ne);
  e_c2_.assign(ne, 0.0);
  const double gam = slab_medium.collision_freq;
  c1_ = (1.0 - gam * dt_ / 2.0) / (1.0 + gam * dt_ / 2.0);
  const double drive_e =
      eps0 * dt_ * slab_medium.plasma_freq * slab_medium.plasma_freq /
      (1.0 + gam * dt_ / 2.0);
  const double drive_m =
      mu0 * dt_ * slab_medium.plasma_freq * slab_medium.plasma_freq /
      (1.0 + gam * dt_ / 2.0);

  for (int j = 0; j <= ny_; ++j)
    for (int i = 0; i <= nx_; ++i) {
      const double x = i * delta_, y = j * delta_;
      const double sx = sigma(face_depth(x, 0, ext_x_, pml_thickness));
      const double sy = sigma(face_depth(y, 0, ext_y_, pml_thickness));
      fill_e(sx, eps0, e_am_x_[id(i, j)], e_b_x_[id(i, j)]);
      fill_e(sy, eps0, e_am_y_[id(i, j)], e_b_y_[id(i, j)]);
      Point p{x, y, 0};
      if (slab && slab->contains(p)) e_c2_[id(i, j)] = drive_e;
    }

  hx_am_.resize(hx_.size());
  hx_b_.resize(hx_.size());
  hx_c2_.assign(hx_.size(), 0.0);
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i <= nx_; ++i) {
      const double y = (j + 0.5) * delta_;
      const double sy =
          sigma(face_depth(y, 0, ext_y_, pml_thickness)) * mu0 / eps0;
      fill_e(sy, mu0, hx_am_[idhx(i, j)], hx_b_[idhx(i, j)]);
      Point p{i * delta_, y, 0};
      if (slab && slab->contains(p)) hx_c2_[idhx(i, j)] = drive_m;
    }

  hy_am_.resize(hy_.size());
  hy_b_.resize(hy_.size());
  hy_c2_.assign(hy_.size(), 0.0);
  for (int j = 0; j <= ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      const double x = (i + 0.5) * delta_;
      const double sx =
          sigma(face_depth(x, 0, ext_x_, pml_thickness)) * mu0 / eps0;
      fill_e(sx, mu0, hy_am_[idhy(i, j)], hy_b_[idhy(i, j)]);
      Point p{x, j * delta_, 0};
      if (slab && slab->contains(p)) hy_c2_[idhy(i, j)] = drive_m;
    }
}

void YeeGridTM::step(const WindowedSine *signal, double rate, int src_i,
                     int src_j) {
  const double inv_d = 1.0 / delta_;

  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i <= nx_; ++i) {
      const int k = idhx(i, j);
      const double dez = (ez_at(i, j + 1) - ez_at(i, j)) * inv_d;
      hx_[k] = hx_am_[k] * hx_[k] + hx_b_[k] * (-dez - mx_[k]);
    }
  for (int j = 0; j <= ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      const int k = idhy(i, j);
      const double dez = (ez_at(i + 1, j) - ez_at(i, j)) * inv_d;
      hy_[k] = hy_am_[k] * hy_[k] + hy_b_[k] * (dez - my_[k]);
    }
  for (size_t k = 0; k < hx_.size(); ++k)
    mx_[k] = c1_ * mx_[k] + hx_c2_[k] * hx_[k];
  for (size_t k = 0; k < hy_.size(); ++k)
    my_[k] = c1_ * my_[k] + hy_c2_[k] * hy_[k];

  for (int j = 1; j < ny_; ++j)
    for (int i = 1; i < nx_; ++i) {
      const int k = id(i, j);
      const double dhy = (hy_[idhy(i, j)] - hy_[idhy(i - 1, j)]) * inv_d;
      const double dhx = (hx_[idhx(i, j)] - hx_[idhx(i, j - 1)]) * inv_d;
      ezx_[k] = e_am_x_[k] * ezx_[k] + e_b_x_[k] * (dhy - jzx_[k]);
      ezy_[k] = e_am_y_[k] * ezy_[k] + e_b_y_[k] * (-dhx - jzy_[k]);
    }
  for (int j = 1; j < ny_; ++j)
    for (int i = 1; i < nx_; ++i) {
      const int k = id(i, j);
      jzx_[k] = c1_ * jzx_[k] + e_c2_[k] * ezx_[k];
      jzy_[k] = c1_ * jzy_[k] + e_c2_[k] * ezy_[k];
    }

  step_ += 1;
  if (signal) {
    const double s = evaluate(*signal, step_ * dt_);
    const int k = id(src_i, src_j);
    ezx_[k] = inject_soft_source(ezx_[k], s, dt_, rate, 0.5);
    ezy_[k] = inject_soft_source(ezy_[k], s, dt_, rate, 0.5);
  }

  double acc = ezx_[id(nx_ / 2, ny_ / 2)];
  for (int j = 1; j < ny_; j += ny_ / 7 + 1)
    for (int i = 1; i < nx_; ++i) acc += ezx_[id(i, j)] + ezy_[id(i, j)];
  if (!std::isfinite(acc)) throw std::runtime_error("FDTD non-finite field");
}

int YeeGridTM::nearest_i(double x) const {
  return std::clamp(static_cast<int>(std::lround(x / delta_)), 0, nx_);
}
int YeeGridTM::nearest_j(double y) const {
  return std::clamp(static_cast<int>(std::lround(y / delta_)), 0, ny_);
}

std::vector<double> YeeGridTM::sample_at(const std::vector<Point> &points) const {
  std::vector<double> out(points.size());
  for (size_t p = 0; p < points.size(); ++p) {
    const double x = points[p][0], y = points[p][1];
    if (x < -1e-12 || x > ext_x_ + 1e-12 || y < -1e-12 || y > ext_y_ + 1e-12)
      throw std::invalid_argument("sample point outside the grid");
    const double fx = std::clamp(x / delta_, 0.0, static_cast<double>(nx_));
    const double fy = std::clamp(y / delta_, 0.0, static_cast<double>(ny_));
    int i = std::min(static_cast<int>(fx), nx_ - 1);
    int j = std::min(static_cast<int>(fy), ny_ - 1);
    const double ax = fx - i, ay = fy - j;
    out[p] = ez_at(i, j) * (1 - ax) * (1 - ay) + ez_at(i + 1, j) * ax * (1 - ay) +
             ez_at(i, j + 1) * (1 - ax) * ay + ez_at(i + 1, j + 1) * ax * ay;
  }
  return out;
}

}  // namespace meshtd
