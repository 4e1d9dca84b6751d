#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "meshtd/excitation.hpp"
#include "meshtd/lattice.hpp"
#include "meshtd/media.hpp"
#include "meshtd/pml.hpp"
#include "meshtd/rbf.hpp"

namespace meshtd {

struct NumericalAbort : std::runtime_error {
  long step;
  explicit NumericalAbort(long s)
      : std::runtime_error("non-finite field value at step " + std::to_string(s)),
        step(s) {}
};

/// Leapfrog step bound: (d_min / divisor) * sqrt(eps0 mu0). divisor = 1 is
/// the stability limit itself; the production default is 2.
double step_size(double d_min, double divisor = 2.0);

/// Per-node update tables for the 2D TM split-field scheme. a_minus is the
/// history factor (1 - s)/(1 + s) with s = sigma dt / (2 xi); b is the
/// curl/current drive (dt/xi)/(1 + s). The x/y suffix names the conductivity
/// axis entering that update (sigma_mx drives H_y, sigma_my drives H_x,
/// sigma_ex drives E_zx, sigma_ey drives E_zy).
struct TmCoefficients {
  int n_e = 0, n_h = 0;
  double dt = 0.0;
  StencilTable h_over_e;  // derivative rows at H-nodes over the E lattice
  StencilTable e_over_h;
  std::vector<double> h_am_x, h_am_y, h_b_x, h_b_y, h_c1, h_c2;
  std::vector<double> e_am_x, e_am_y, e_b_x, e_b_y, e_c1, e_c2;
  std::vector<int> pinned_e;  // boundary electric nodes held at zero
};

TmCoefficients precompute_tm(const NodeLattice &e_lat, const NodeLattice &h_lat,
                             const StencilTable &h_over_e,
                             const StencilTable &e_over_h,
                             const ConductivityField &sigma_e_nodes,
                             const ConductivityField &sigma_h_nodes,
                             const MaterialMap &e_media,
                             const MaterialMap &h_media, double dt,
                             std::vector<int> pinned_e);

/// Split fields and ADE currents at one leapfrog instant: E and M at
/// integer steps, H and J at half steps.
struct TmState {
  std::vector<double> ezx, ezy, jzx, jzy;  // E-nodes
  std::vector<double> hx, hy, mx, my;      // H-nodes
  long step = 0;

  static TmState zeros(int n_e, int n_h);
  double ez(int node) const { return ezx[node] + ezy[node]; }
};

struct TmSource {
  SourceCluster cluster;
  WindowedSine signal;
  double rate = 0.0;  // 1/s, injection scale (default: signal frequency)
};

/// Advances one leapfrog step: H update, M update, E update, J update,
/// then soft-source injection. Aborts on non-finite fields.
void step_tm(TmState &state, const TmCoefficients &coeffs,
             const TmSource *source, int workers = 1);

struct RunRecord {
  std::vector<double> times;
  std::vector<std::vector<double>> probe_values;  // per probe, per step
  std::vector<double> max_abs_ez;                 // per step
};

/// Runs `steps` leapfrog steps recording reconstructed E_z at the probe
/// nodes after every step. `on_step(state)` runs after each step when set.
RunRecord run(TmState &state, const TmCoefficients &coeffs,
              const TmSource *source, long steps,
              const std::vector<int> &probe_nodes, int workers = 1,
              const std::function<void(const TmState &)> &on_step = {});

}  // namespace meshtd
