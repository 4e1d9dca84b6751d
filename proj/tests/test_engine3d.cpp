#include <doctest.h>

#include <cmath>

#include "meshtd/engine3d.hpp"
#include "meshtd/scenario.hpp"

using namespace meshtd;

namespace {

struct Cube {
  NodeLattice e, h;
  Coefficients3D coeffs;
};

Cube make_cube(int n, double h, double wp) {
  Cube c;
  c.e.dim = c.h.dim = 3;
  c.e.spacing = c.h.spacing = h;
  c.e.counts = {n, n, n};
  c.h.counts = {n - 1, n - 1, n - 1};
  c.e.extents = {(n - 1) * h, (n - 1) * h, (n - 1) * h};
  c.h.extents = c.e.extents;
  c.h.origin = {h / 2, h / 2, h / 2};
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        c.e.positions.push_back({ix * h, iy * h, iz * h});
  for (int iz = 0; iz < n - 1; ++iz)
    for (int iy = 0; iy < n - 1; ++iy)
      for (int ix = 0; ix < n - 1; ++ix)
        c.h.positions.push_back({(ix + 0.5) * h, (iy + 0.5) * h, (iz + 0.5) * h});

  StencilOptions opts;
  opts.size = 12;
  StencilTable he = build_stencil_table(c.e, c.h.positions, 0.5, opts);
  StencilTable eh = build_stencil_table(c.h, c.e.positions, 0.5, opts);

  std::vector<PmlDepthTag> te(c.e.positions.size()), th(c.h.positions.size());
  PmlSpec pml;
  pml.thickness = h;
  ConductivityField se = assign_conductivities(te, pml, 3);
  ConductivityField sh = assign_conductivities(th, pml, 3);

  MaterialMap me, mh;
  if (wp > 0) {
    SlabGeometry slab{1, 0.0, (n - 1) * h};
    me = MaterialMap::with_slab(c.e, slab, DrudeMedium{wp, 0.0});
    mh = MaterialMap::with_slab(c.h, slab, DrudeMedium{wp, 0.0});
  } else {
    me = MaterialMap::vacuum(c.e);
    mh = MaterialMap::vacuum(c.h);
  }
  const double dt = step_size(h, 2.0);
  c.coeffs = precompute_3d(c.e, c.h, he, eh, se, sh, me, mh, dt,
                           boundary_nodes(c.e, {0, 1, 2}));
  return c;
}

}  // namespace

TEST_CASE("all-zero 3D state stays zero") {
  Cube c = make_cube(7, 5e-4, 0.0);
  State3D s = State3D::zeros(c.e.size(), c.h.size());
  for (int q = 0; q < 4; ++q) step_3d(s, c.coeffs, nullptr);
  for (double v : s.ezx) CHECK(v == 0.0);
  for (double v : s.hyx) CHECK(v == 0.0);
}

TEST_CASE("currents stay frozen without dispersion") {
  Cube c = make_cube(7, 5e-4, 0.0);
  State3D s = State3D::zeros(c.e.size(), c.h.size());
  TmSource src;
  src.cluster = make_source_cluster(c.e, {1.5e-3, 1.5e-3, 1.5e-3}, 5e-4);
  src.signal = WindowedSine{30e9, 1, 1, 1.0};
  src.rate = 30e9;
  for (int q = 0; q < 12; ++q) step_3d(s, c.coeffs, &src);
  double field = 0.0, current = 0.0;
  for (int i = 0; i < c.e.size(); ++i) {
    field = std::max(field, std::abs(s.ez(i)));
    current = std::max(current, std::abs(s.jzx[i]) + std::abs(s.jzy[i]));
  }
  for (int i = 0; i < c.h.size(); ++i)
    current = std::max(current, std::abs(s.mxy[i]) + std::abs(s.myx[i]));
  CHECK(field > 0.0);
  CHECK(current == 0.0);
}

TEST_CASE("dispersive cube drives currents") {
  Cube c = make_cube(7, 5e-4, 2.666e11);
  State3D s = State3D::zeros(c.e.size(), c.h.size());
  TmSource src;
  src.cluster = make_source_cluster(c.e, {1.5e-3, 1.5e-3, 1.5e-3}, 5e-4);
  src.signal = WindowedSine{30e9, 1, 1, 1.0};
  src.rate = 30e9;
  for (int q = 0; q < 12; ++q) step_3d(s, c.coeffs, &src);
  double current = 0.0;
  for (int i = 0; i < c.e.size(); ++i)
    current = std::max(current, std::abs(s.jzx[i]) + std::abs(s.jzy[i]));
  CHECK(current > 0.0);
}

TEST_CASE("3D engine requires dim-3 stencil tables") {
  auto lat2 = build_staggered_lattice({0.005, 0.005, 0}, {11, 11, 1}, 0);
  StencilOptions opts;
  StencilTable t2 = build_stencil_table(lat2.e, lat2.h.positions, 0.5, opts);
  ConductivityField f = assign_conductivities(
      std::vector<PmlDepthTag>(lat2.h.positions.size()), PmlSpec{2, 1e-3, 1, eta0}, 3);
  MaterialMap m = MaterialMap::vacuum(lat2.e);
  CHECK_THROWS(precompute_3d(lat2.e, lat2.h, t2, t2, f, f, m, m, 1e-12, {}));
}
