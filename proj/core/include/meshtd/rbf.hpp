#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "meshtd/lattice.hpp"

namespace meshtd {

/// How the Gaussian width is derived from the dimensionless shape
/// parameter alpha_c. `Spacing` uses alpha = alpha_c / d_min^2; `Support`
/// uses the stencil's own support radius, alpha = alpha_c / R^2.
enum class AlphaNormalization { Spacing, Support };

struct RbfKernel {
  double alpha = 0.0;    // 1/m^2
  double alpha_c = 0.0;  // dimensionless
  double d_min = 0.0;    // metres (reference spacing)
};

/// Kernel with alpha = alpha_c / d_min^2.
RbfKernel make_kernel(double alpha_c, double d_min);

/// exp(-alpha r^2)
double gaussian(double r, const RbfKernel &kernel);

struct IllConditionedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shape-function row of one evaluation point over a node stencil:
/// values Phi_j, first-derivative rows dPhi_j/d{x,y,z}, and a condition
/// estimate of the moment matrix.
struct Stencil {
  Point eval_point{0, 0, 0};
  std::vector<int> node_indices;
  std::vector<double> phi;
  std::vector<double> dphi[3];
  double condition = 0.0;
  int dim = 2;
};

/// Assembles the Gaussian moment matrix over `nodes`, solves for the shape
/// function and its derivative rows at `eval_point`. Throws
/// IllConditionedError when the condition estimate exceeds `cond_limit`.
Stencil build_shape_functions(const std::vector<Point> &nodes,
                              const Point &eval_point, const RbfKernel &kernel,
                              int dim, double cond_limit = 1e12);

/// Sum_j Phi_j * value_j.
double interpolate(const Stencil &stencil, std::span<const double> nodal_values);

/// Flattened per-node stencils (CSR layout) for one lattice evaluated
/// against a source lattice. Weights hold the raw dPhi/d<axis> rows.
struct StencilTable {
  int stencil_size = 0;
  int dim = 2;
  std::vector<int> offsets;   // size n+1
  std::vector<int> indices;   // source-node indices
  std::vector<double> dwx, dwy, dwz;
  std::vector<double> condition;  // per eval node
};

struct StencilOptions {
  int size = 12;
  AlphaNormalization normalization = AlphaNormalization::Spacing;
  double cond_limit = 1e12;
  bool global = false;  // use every source node for every stencil
};

/// Builds derivative stencils at every node of `eval_nodes` over
/// `source`. alpha_c is normalized per `opts.normalization`.
StencilTable build_stencil_table(const NodeLattice &source,
                                 const std::vector<Point> &eval_nodes,
                                 double alpha_c, const StencilOptions &opts);

}  // namespace meshtd
