#include "meshtd/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace meshtd {

static NodeLattice make_lattice(const std::array<double, 3> &extents,
                                const std::array<int, 3> &counts,
                                const std::array<double, 3> &origin,
                                double spacing, int dim, NodeKind kind) {
  NodeLattice lat;
  lat.dim = dim;
  lat.kind = kind;
  lat.counts = counts;
  lat.extents = extents;
  lat.origin = origin;
  lat.spacing = spacing;
  int total = 1;
  for (int a = 0; a < dim; ++a) total *= counts[a];
  lat.positions.reserve(total);
  std::array<int, 3> idx{0, 0, 0};
  for (int n = 0; n < total; ++n) {
    Point p{0, 0, 0};
    for (int a = 0; a < dim; ++a) p[a] = origin[a] + idx[a] * spacing;
    lat.positions.push_back(p);
    for (int a = 0; a < dim; ++a) {
      if (++idx[a] < counts[a]) break;
      idx[a] = 0;
    }
  }
  return lat;
}

std::vector<PmlDepthTag> pml_depth_tags(const NodeLattice &lat, int pml_layers) {
  std::vector<PmlDepthTag> tags(lat.positions.size());
  if (pml_layers <= 0) return tags;
  // Depths are measured against the shared domain box [0, extent] per axis,
  // so the staggered lattices see one common interior/PML interface.
  const double d = pml_layers * lat.spacing;
  for (size_t i = 0; i < lat.positions.size(); ++i) {
    for (int a = 0; a < lat.dim; ++a) {
      const double p = lat.positions[i][a];
      const double lo = d - p;
      const double hi = p - (lat.extents[a] - d);
      const double rho = std::max(0.0, std::max(lo, hi));
      tags[i].rho[a] = rho;
      tags[i].thickness[a] = d;
    }
  }
  return tags;
}

StaggeredLattice build_staggered_lattice(const std::array<double, 3> &extents,
                                         const std::array<int, 3> &nodes_per_axis,
                                         int pml_layers, int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  for (int a = 0; a < dim; ++a) {
    if (extents[a] <= 0.0) throw std::invalid_argument("extents must be positive");
    if (nodes_per_axis[a] < 2)
      throw std::invalid_argument("need at least 2 nodes per axis");
  }
  const int nmin = *std::min_element(nodes_per_axis.begin(),
                                     nodes_per_axis.begin() + dim);
  if (pml_layers < 0 || 2 * pml_layers >= nmin)
    throw std::invalid_argument("pml_layers would consume the whole domain");

  const double h = extents[0] / (nodes_per_axis[0] - 1);
  for (int a = 1; a < dim; ++a) {
    const double ha = extents[a] / (nodes_per_axis[a] - 1);
    if (std::abs(ha - h) > 1e-12 * h)
      throw std::invalid_argument("anisotropic spacing is not supported");
  }

  StaggeredLattice out;
  out.e = make_lattice(extents, nodes_per_axis, {0, 0, 0}, h, dim,
                       NodeKind::Electric);
  std::array<int, 3> hc{1, 1, 1};
  std::array<double, 3> horig{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    hc[a] = nodes_per_axis[a] - 1;
    horig[a] = h / 2;
  }
  out.h = make_lattice(extents, hc, horig, h, dim, NodeKind::Magnetic);
  out.e_tags = pml_depth_tags(out.e, pml_layers);
  out.h_tags = pml_depth_tags(out.h, pml_layers);
  return out;
}

std::vector<int> boundary_nodes(const NodeLattice &lat,
                                const std::vector<int> &axes) {
  std::vector<int> out;
  const double tol = 1e-9 * lat.spacing;
  for (int i = 0; i < lat.size(); ++i) {
    for (int a : axes) {
      const double p = lat.positions[i][a] - lat.origin[a];
      const double span = lat.spacing * (lat.counts[a] - 1);
      if (p < tol || std::abs(p - span) < tol) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

NeighborSearch::NeighborSearch(const NodeLattice &lattice) : lat_(lattice) {
  if (lat_.positions.empty()) throw std::invalid_argument("empty lattice");
  bin_ = lat_.spacing > 0 ? lat_.spacing : 1.0;
  Point hi{};
  for (int a = 0; a < 3; ++a) {
    lo_[a] = std::numeric_limits<double>::max();
    hi[a] = std::numeric_limits<double>::lowest();
  }
  for (const auto &p : lat_.positions)
    for (int a = 0; a < lat_.dim; ++a) {
      lo_[a] = std::min(lo_[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  int total = 1;
  for (int a = 0; a < lat_.dim; ++a) {
    nbins_[a] = std::max(1, static_cast<int>((hi[a] - lo_[a]) / bin_) + 1);
    total *= nbins_[a];
  }
  cells_.resize(total);
  for (int i = 0; i < lat_.size(); ++i)
    cells_[cell_of(lat_.positions[i])].push_back(i);
}

int NeighborSearch::cell_of(const Point &p) const {
  int idx = 0, stride = 1;
  for (int a = 0; a < lat_.dim; ++a) {
    int c = static_cast<int>((p[a] - lo_[a]) / bin_);
    c = std::clamp(c, 0, nbins_[a] - 1);
    idx += c * stride;
    stride *= nbins_[a];
  }
  return idx;
}

std::vector<int> NeighborSearch::nearest(const Point &query, int count) const {
  if (count <= 0) return {};
  if (count > lat_.size())
    throw std::invalid_argument("count exceeds node count");

  std::array<int, 3> qc{0, 0, 0};
  for (int a = 0; a < lat_.dim; ++a) {
    int c = static_cast<int>((query[a] - lo_[a]) / bin_);
    qc[a] = std::clamp(c, 0, nbins_[a] - 1);
  }

  auto dist2 = [&](int i) {
    double s = 0.0;
    for (int a = 0; a < lat_.dim; ++a) {
      const double d = query[a] - lat_.positions[i][a];
      s += d * d;
    }
    return s;
  };

  std::vector<std::pair<double, int>> best;  // (dist2, index)
  best.reserve(4 * count);
  int max_ring = 0;
  for (int a = 0; a < lat_.dim; ++a)
    max_ring = std::max(max_ring, nbins_[a]);

  for (int r = 0; r <= max_ring; ++r) {
    // Candidates in cells at Chebyshev ring r cannot be closer than (r-1)*bin.
    if (static_cast<int>(best.size()) >= count) {
      std::nth_element(best.begin(), best.begin() + (count - 1), best.end());
      const double kth = best[count - 1].first;
      const double ring_min = (r - 1) * bin_;
      if (ring_min > 0 && ring_min * ring_min > kth) break;
    }
    std::array<int, 3> c{0, 0, 0};
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < lat_.dim; ++a) {
      lo[a] = std::max(0, qc[a] - r);
      hi[a] = std::min(nbins_[a] - 1, qc[a] + r);
    }
    // Visit only cells on the surface of the ring.
    for (c[2] = lo[2]; c[2] <= (lat_.dim > 2 ? hi[2] : 0); ++c[2])
      for (c[1] = lo[1]; c[1] <= (lat_.dim > 1 ? hi[1] : 0); ++c[1])
        for (c[0] = lo[0]; c[0] <= hi[0]; ++c[0]) {
          int cheb = 0;
          for (int a = 0; a < lat_.dim; ++a)
            cheb = std::max(cheb, std::abs(c[a] - qc[a]));
          if (cheb != r) continue;
          int idx = 0, stride = 1;
          for (int a = 0; a < lat_.dim; ++a) {
            idx += c[a] * stride;
            stride *= nbins_[a];
          }
          for (int i : cells_[idx]) best.emplace_back(dist2(i), i);
        }
  }

  std::sort(best.begin(), best.end());
  best.resize(count);
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = best[i].second;
  return out;
}

}  // namespace meshtd
