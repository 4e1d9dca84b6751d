#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace meshtd {

using Point = std::array<double, 3>;

enum class NodeKind { Electric, Magnetic };

/// Uniform scattered-node set covering a rectangular domain.
/// Node order is axis-0 fastest, last axis slowest (plane-major in 3D).
struct NodeLattice {
  int dim = 2;
  NodeKind kind = NodeKind::Electric;
  std::vector<Point> positions;
  std::array<int, 3> counts{1, 1, 1};     // nodes per axis
  std::array<double, 3> extents{0, 0, 0}; // domain size per axis, metres
  std::array<double, 3> origin{0, 0, 0};
  double spacing = 0.0;                   // d_min, metres

  int size() const { return static_cast<int>(positions.size()); }
};

/// Per-node PML depth: rho[axis] is the depth past the interior/PML
/// interface (0 for interior nodes), thickness[axis] the local PML depth.
struct PmlDepthTag {
  std::array<double, 3> rho{0, 0, 0};
  std::array<double, 3> thickness{0, 0, 0};
  bool interior() const {
    return rho[0] == 0.0 && rho[1] == 0.0 && rho[2] == 0.0;
  }
};

struct StaggeredLattice {
  NodeLattice e;
  NodeLattice h;
  std::vector<PmlDepthTag> e_tags;
  std::vector<PmlDepthTag> h_tags;
};

/// Builds the staggered E/H node sets with spacing d_min = extent/(n-1) and
/// the H lattice offset by d_min/2 along every axis. Nodes within
/// `pml_layers` spacings of a domain face carry rho > 0 toward that face.
StaggeredLattice build_staggered_lattice(const std::array<double, 3> &extents,
                                         const std::array<int, 3> &nodes_per_axis,
                                         int pml_layers, int dim = 2);

/// Depth tags for an arbitrary node set against the same face rule.
std::vector<PmlDepthTag> pml_depth_tags(const NodeLattice &lat, int pml_layers);

/// Indices of nodes lying on a domain face along the given axes
/// (used to pin the outermost electric ring).
std::vector<int> boundary_nodes(const NodeLattice &lat,
                                const std::vector<int> &axes);

/// Exact k-nearest-neighbor queries over a node set, backed by uniform
/// spatial bins of side d_min. Ties are broken by ascending node index.
class NeighborSearch {
public:
  explicit NeighborSearch(const NodeLattice &lattice);

  /// Exactly `count` indices sorted by ascending distance, then index.
  std::vector<int> nearest(const Point &query, int count) const;

private:
  const NodeLattice &lat_;
  double bin_ = 0.0;
  std::array<int, 3> nbins_{1, 1, 1};
  std::array<double, 3> lo_{0, 0, 0};
  std::vector<std::vector<int>> cells_;
  int cell_of(const Point &p) const;
};

}  // namespace meshtd
