#include "meshtd/engine.hpp"

#include <cmath>

#include "meshtd/constants.hpp"

namespace meshtd {

double step_size(double d_min, double divisor) {
  if (d_min <= 0) throw std::invalid_argument("d_min must be positive");
  if (divisor < 1.0)
    throw std::invalid_argument("divisor < 1 violates the stability bound");
  return (d_min / divisor) * std::sqrt(eps0 * mu0);
}

static void fill_current_coeffs(const MaterialMap &media, double dt, double xi,
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
}

TmCoefficients precompute_tm(const NodeLattice &e_lat, const NodeLattice &h_lat,
                             const StencilTable &h_over_e,
                             const StencilTable &e_over_h,
                             const ConductivityField &sigma_e_nodes,
                             const ConductivityField &sigma_h_nodes,
                             const MaterialMap &e_media,
                             const MaterialMap &h_media, double dt,
                             std::vector<int> pinned_e) {
  TmCoefficients c;
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
  fill(sigma_h_nodes.sigma_m[0], mu0, c.h_am_x, c.h_b_x);
  fill(sigma_h_nodes.sigma_m[1], mu0, c.h_am_y, c.h_b_y);
  fill(sigma_e_nodes.sigma_e[0], eps0, c.e_am_x, c.e_b_x);
  fill(sigma_e_nodes.sigma_e[1], eps0, c.e_am_y, c.e_b_y);
  fill_current_coeffs(h_media, dt, mu0, c.h_c1, c.h_c2);
  fill_current_coeffs(e_media, dt, eps0, c.e_c1, c.e_c2);
  return c;
}

TmState TmState::zeros(int n_e, int n_h) {
  TmState s;
  s.ezx.assign(n_e, 0.0);
  s.ezy.assign(n_e, 0.0);
  s.jzx.assign(n_e, 0.0);
  s.jzy.assign(n_e, 0.0);
  s.hx.assign(n_h, 0.0);
  s.hy.assign(n_h, 0.0);
  s.mx.assign(n_h, 0.0);
  s.my.assign(n_h, 0.0);
  return s;
}

void step_tm(TmState &state, const TmCoefficients &c, const TmSource *source,
             int workers) {
  const int n_e = c.n_e;
  const int n_h = c.n_h;
  static thread_local std::vector<double> ez_scratch;
  ez_scratch.resize(n_e);
  double *ez = ez_scratch.data();
  for (int i = 0; i < n_e; ++i) ez[i] = state.ezx[i] + state.ezy[i];

  const int *h_idx = c.h_over_e.indices.data();
  const int *h_off = c.h_over_e.offsets.data();
  const double *h_wx = c.h_over_e.dwx.data();
  const double *h_wy = c.h_over_e.dwy.data();

#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
  for (int i = 0; i < n_h; ++i) {
    double cx = 0.0, cy = 0.0;
    for (int j = h_off[i]; j < h_off[i + 1]; ++j) {
      const double v = ez[h_idx[j]];
      cx += h_wx[j] * v;
      cy += h_wy[j] * v;
    }
    state.hy[i] = c.h_am_x[i] * state.hy[i] + c.h_b_x[i] * (cx - state.my[i]);
    state.hx[i] = c.h_am_y[i] * state.hx[i] + c.h_b_y[i] * (-cy - state.mx[i]);
  }

#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
  for (int i = 0; i < n_h; ++i) {
    state.my[i] = c.h_c1[i] * state.my[i] + c.h_c2[i] * state.hy[i];
    state.mx[i] = c.h_c1[i] * state.mx[i] + c.h_c2[i] * state.hx[i];
  }

  const int *e_idx = c.e_over_h.indices.data();
  const int *e_off = c.e_over_h.offsets.data();
  const double *e_wx = c.e_over_h.dwx.data();
  const double *e_wy = c.e_over_h.dwy.data();

#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
  for (int i = 0; i < n_e; ++i) {
    double cx = 0.0, cy = 0.0;
    for (int j = e_off[i]; j < e_off[i + 1]; ++j) {
      cx += e_wx[j] * state.hy[e_idx[j]];
      cy += e_wy[j] * state.hx[e_idx[j]];
    }
    state.ezx[i] = c.e_am_x[i] * state.ezx[i] + c.e_b_x[i] * (cx - state.jzx[i]);
    state.ezy[i] = c.e_am_y[i] * state.ezy[i] + c.e_b_y[i] * (-cy - state.jzy[i]);
  }

#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) if (workers > 1)
#endif
  for (int i = 0; i < n_e; ++i) {
    state.jzx[i] = c.e_c1[i] * state.jzx[i] + c.e_c2[i] * state.ezx[i];
    state.jzy[i] = c.e_c1[i] * state.jzy[i] + c.e_c2[i] * state.ezy[i];
  }

  state.step += 1;
  if (source) {
    const double t = state.step * c.dt;
    const double s = evaluate(source->signal, t);
    for (size_t j = 0; j < source->cluster.nodes.size(); ++j) {
      const int node = source->cluster.nodes[j];
      const double w = 0.5 * source->cluster.weights[j];
      state.ezx[node] =
          inject_soft_source(state.ezx[node], s, c.dt, source->rate, w);
      state.ezy[node] =
          inject_soft_source(state.ezy[node], s, c.dt, source->rate, w);
    }
  }
  for (int i : c.pinned_e) {
    state.ezx[i] = 0.0;
    state.ezy[i] = 0.0;
  }

  double acc = 0.0;
  for (int i = 0; i < n_e; ++i) acc += std::abs(state.ezx[i]) + std::abs(state.ezy[i]);
  for (int i = 0; i < n_h; ++i) acc += std::abs(state.hx[i]) + std::abs(state.hy[i]);
  if (!std::isfinite(acc)) throw NumericalAbort(state.step);
}

RunRecord run(TmState &state, const TmCoefficients &coeffs,
              const TmSource *source, long steps,
              const std::vector<int> &probe_nodes, int workers,
              const std::function<void(const TmState &)> &on_step) {
  RunRecord rec;
  rec.probe_values.resize(probe_nodes.size());
  for (long q = 0; q < steps; ++q) {
    step_tm(state, coeffs, source, workers);
    rec.times.push_back(state.step * coeffs.dt);
    for (size_t p = 0; p < probe_nodes.size(); ++p)
      rec.probe_values[p].push_back(state.ez(probe_nodes[p]));
    double m = 0.0;
    for (int i = 0; i < coeffs.n_e; ++i)
      m = std::max(m, std::abs(state.ez(i)));
    rec.max_abs_ez.push_back(m);
    if (on_step) on_step(state);
  }
  return rec;
}

}  // namespace meshtd
