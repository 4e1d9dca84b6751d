#include "meshtd/engine3d.hpp"

#include <cmath>

#include "meshtd/constants.hpp"

namespace meshtd {

State3D State3D::zeros(int n_e, int n_h) {
  State3D s;
  for (auto *v : {&s.hyx, &s.hyz, &s.hxy, &s.hxz, &s.hzx, &s.hzy, &s.myx,
                  &s.myz, &s.mxy, &s.mxz, &s.mzx, &s.mzy})
    v->assign(n_h, 0.0);
  for (auto *v : {&s.eyx, &s.eyz, &s.exy, &s.exz, &s.ezx, &s.ezy, &s.jyx,
                  &s.jyz, &s.jxy, &s.jxz, &s.jzx, &s.jzy})
    v->assign(n_e, 0.0);
  return s;
}

Coefficients3D precompute_3d(const NodeLattice &e_lat, const NodeLattice &h_lat,
                             const StencilTable &h_over_e,
                             const StencilTable &e_over_h,
                             const ConductivityField &sigma_e_nodes,
                             const ConductivityField &sigma_h_nodes,
                             const MaterialMap &e_media,
                             const MaterialMap &h_media, double dt,
                             std::vector<int> pinned_e) {
  if (h_over_e.dim != 3 || e_over_h.dim != 3)
    throw std::invalid_argument("3D engine needs dim-3 stencil tables");
  Coefficients3D c;
  c.n_e = e_lat.size();
  c.n_h = h_lat.size();
  c.dt = dt;
  c.h_over_e = h_over_e;
  c.e_over_h = e_over_h;
  c.pinned_e = std::move(pinned_e);

  auto fill = [&](const std::vector<double> &sigma, double xi,
                  std::vector<double> &am, std::vector<double> &b) {
    const int n = static_cast<int>(sigma.size());
    am.resize(n);
    b.resize(n);
    for (int i = 0; i < n; ++i) {
      const double s = sigma[i] * dt / (2.0 * xi);
      am[i] = (1.0 - s) / (1.0 + s);
      b[i] = (dt / xi) / (1.0 + s);
    }
  };
  for (int a = 0; a < 3; ++a) {
    fill(sigma_h_nodes.sigma_m[a], mu0, c.h_am[a], c.h_b[a]);
    fill(sigma_e_nodes.sigma_e[a], eps0, c.e_am[a], c.e_b[a]);
  }
  auto currents = [&](const MaterialMap &media, double xi,
                      std::vector<double> &c1, std::vector<double> &c2) {
    const int n = static_cast<int>(media.in_slab.size());
    c1.resize(n);
    c2.resize(n);
    for (int i = 0; i < n; ++i) {
      const DrudeMedium m = media.at(i);
      const double den = 1.0 + m.collision_freq * dt / 2.0;
      c1[i] = (1.0 - m.collision_freq * dt / 2.0) / den;
      c2[i] = xi * dt * m.plasma_freq * m.plasma_freq / den;
    }
  };
  currents(h_media, mu0, c.h_c1, c.h_c2);
  currents(e_media, eps0, c.e_c1, c.e_c2);
  return c;
}

void step_3d(State3D &s, const Coefficients3D &c, const TmSource *source,
             int workers) {
  const int n_e = c.n_e;
  const int n_h = c.n_h;
  static thread_local std::vector<double> ex_s, ey_s, ez_s, hx_s, hy_s, hz_s;
  ex_s.resize(n_e);
  ey_s.resize(n_e);
  ez_s.resize(n_e);
  for (int i = 0; i < n_e; ++i) {
    ex_s[i] = s.exy[i] + s.exz[i];
    ey_s[i] = s.eyx[i] + s.eyz[i];
    ez_s[i] = s.ezx[i] + s.ezy[i];
  }

  const int *h_idx = c.h_over_e.indices.data();
  const int *h_off = c.h_over_e.offsets.data();
  const double *h_wx = c.h_over_e.dwx.data();
  const double *h_wy = c.h_over_e.dwy.data();
  const double *h_wz = c.h_over_e.dwz.data();

#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
  for (int i = 0; i < n_h; ++i) {
    double dx_ey = 0, dx_ez = 0, dy_ex = 0, dy_ez = 0, dz_ex = 0, dz_ey = 0;
    for (int j = h_off[i]; j < h_off[i + 1]; ++j) {
      const int n = h_idx[j];
      dx_ey += h_wx[j] * ey_s[n];
      dx_ez += h_wx[j] * ez_s[n];
      dy_ex += h_wy[j] * ex_s[n];
      dy_ez += h_wy[j] * ez_s[n];
      dz_ex += h_wz[j] * ex_s[n];
      dz_ey += h_wz[j] * ey_s[n];
    }
    s.hyx[i] = c.h_am[2][i] * s.hyx[i] + c.h_b[2][i] * (-dz_ex - s.myx[i]);
    s.hyz[i] = c.h_am[0][i] * s.hyz[i] + c.h_b[0][i] * (dx_ez - s.myz[i]);
    s.hxy[i] = c.h_am[2][i] * s.hxy[i] + c.h_b[2][i] * (dz_ey - s.mxy[i]);
    s.hxz[i] = c.h_am[1][i] * s.hxz[i] + c.h_b[1][i] * (-dy_ez - s.mxz[i]);
    s.hzx[i] = c.h_am[1][i] * s.hzx[i] + c.h_b[1][i] * (dy_ex - s.mzx[i]);
    s.hzy[i] = c.h_am[0][i] * s.hzy[i] + c.h_b[0][i] * (-dx_ey - s.mzy[i]);
  }

#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
  for (int i = 0; i < n_h; ++i) {
    s.myx[i] = c.h_c1[i] * s.myx[i] + c.h_c2[i] * s.hyx[i];
    s.myz[i] = c.h_c1[i] * s.myz[i] + c.h_c2[i] * s.hyz[i];
    s.mxy[i] = c.h_c1[i] * s.mxy[i] + c.h_c2[i] * s.hxy[i];
    s.mxz[i] = c.h_c1[i] * s.mxz[i] + c.h_c2[i] * s.hxz[i];
    s.mzx[i] = c.h_c1[i] * s.mzx[i] + c.h_c2[i] * s.hzx[i];
    s.mzy[i] = c.h_c1[i] * s.mzy[i] + c.h_c2[i] * s.hzy[i];
  }

  hx_s.resize(n_h);
  hy_s.resize(n_h);
  hz_s.resize(n_h);
  for (int i = 0; i < n_h; ++i) {
    hx_s[i] = s.hxy[i] + s.hxz[i];
    hy_s[i] = s.hyx[i] + s.hyz[i];
    hz_s[i] = s.hzx[i] + s.hzy[i];
  }

  const int *e_idx = c.e_over_h.indices.data();
  const int *e_off = c.e_over_h.offsets.data();
  const double *e_wx = c.e_over_h.dwx.data();
  const double *e_wy = c.e_over_h.dwy.data();
  const double *e_wz = c.e_over_h.dwz.data();

#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
  for (int i = 0; i < n_e; ++i) {
    double dx_hy = 0, dx_hz = 0, dy_hx = 0, dy_hz = 0, dz_hx = 0, dz_hy = 0;
    for (int j = e_off[i]; j < e_off[i + 1]; ++j) {
      const int n = e_idx[j];
      dx_hy += e_wx[j] * hy_s[n];
      dx_hz += e_wx[j] * hz_s[n];
      dy_hx += e_wy[j] * hx_s[n];
      dy_hz += e_wy[j] * hz_s[n];
      dz_hx += e_wz[j] * hx_s[n];
      dz_hy += e_wz[j] * hy_s[n];
    }
    s.eyx[i] = c.e_am[2][i] * s.eyx[i] + c.e_b[2][i] * (dz_hx - s.jyx[i]);
    s.eyz[i] = c.e_am[0][i] * s.eyz[i] + c.e_b[0][i] * (-dx_hz - s.jyz[i]);
    s.exy[i] = c.e_am[2][i] * s.exy[i] + c.e_b[2][i] * (-dz_hy - s.jxy[i]);
    s.exz[i] = c.e_am[1][i] * s.exz[i] + c.e_b[1][i] * (dy_hz - s.jxz[i]);
    s.ezx[i] = c.e_am[1][i] * s.ezx[i] + c.e_b[1][i] * (-dy_hx - s.jzx[i]);
    s.ezy[i] = c.e_am[0][i] * s.ezy[i] + c.e_b[0][i] * (dx_hy - s.jzy[i]);
  }

#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
  for (int i = 0; i < n_e; ++i) {
    s.jyx[i] = c.e_c1[i] * s.jyx[i] + c.e_c2[i] * s.eyx[i];
    s.jyz[i] = c.e_c1[i] * s.jyz[i] + c.e_c2[i] * s.eyz[i];
    s.jxy[i] = c.e_c1[i] * s.jxy[i] + c.e_c2[i] * s.exy[i];
    s.jxz[i] = c.e_c1[i] * s.jxz[i] + c.e_c2[i] * s.exz[i];
    s.jzx[i] = c.e_c1[i] * s.jzx[i] + c.e_c2[i] * s.ezx[i];
    s.jzy[i] = c.e_c1[i] * s.jzy[i] + c.e_c2[i] * s.ezy[i];
  }

  s.step += 1;
  if (source) {
    const double t = s.step * c.dt;
    const double sig = evaluate(source->signal, t);
    for (size_t j = 0; j < source->cluster.nodes.size(); ++j) {
      const int node = source->cluster.nodes[j];
      const double w = 0.5 * source->cluster.weights[j];
      s.ezx[node] = inject_soft_source(s.ezx[node], sig, c.dt, source->rate, w);
      s.ezy[node] = inject_soft_source(s.ezy[node], sig, c.dt, source->rate, w);
    }
  }
  for (int i : c.pinned_e) {
    s.exy[i] = s.exz[i] = 0.0;
    s.eyx[i] = s.eyz[i] = 0.0;
    s.ezx[i] = s.ezy[i] = 0.0;
  }

  double acc = 0.0;
  for (int i = 0; i < n_e; ++i) acc += std::abs(s.ezx[i]) + std::abs(s.ezy[i]);
  for (int i = 0; i < n_h; ++i) acc += std::abs(s.hxz[i]) + std::abs(s.hyz[i]);
  if (!std::isfinite(acc)) throw NumericalAbort(s.step);
}

}  // namespace meshtd
