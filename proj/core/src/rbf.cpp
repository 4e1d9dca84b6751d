#include "meshtd/rbf.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <sstream>

namespace meshtd {

RbfKernel make_kernel(double alpha_c, double d_min) {
  if (alpha_c <= 0 || d_min <= 0)
    throw std::invalid_argument("alpha_c and d_min must be positive");
  return RbfKernel{alpha_c / (d_min * d_min), alpha_c, d_min};
}

double gaussian(double r, const RbfKernel &kernel) {
  if (r < 0) throw std::invalid_argument("radius must be non-negative");
  return std::exp(-kernel.alpha * r * r);
}

Stencil build_shape_functions(const std::vector<Point> &nodes,
                              const Point &eval_point, const RbfKernel &kernel,
                              int dim, double cond_limit) {
  const int n = static_cast<int>(nodes.size());
  if (n < 1) throw std::invalid_argument("stencil needs at least one node");
  const double alpha = kernel.alpha;

  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double r2 = 0.0;
      for (int a = 0; a < dim; ++a) {
        const double d = nodes[i][a] - nodes[j][a];
        r2 += d * d;
      }
      const double v = std::exp(-alpha * r2);
      A(i, j) = v;
      A(j, i) = v;
    }
  }

  Eigen::MatrixXd rhs(n, 1 + dim);
  for (int j = 0; j < n; ++j) {
    double r2 = 0.0;
    std::array<double, 3> d{0, 0, 0};
    for (int a = 0; a < dim; ++a) {
      d[a] = eval_point[a] - nodes[j][a];
      r2 += d[a] * d[a];
    }
    const double b = std::exp(-alpha * r2);
    rhs(j, 0) = b;
    for (int a = 0; a < dim; ++a) rhs(j, 1 + a) = -2.0 * alpha * d[a] * b;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double rcond = lu.rcond();
  const double cond = rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(cond <= cond_limit)) {
    std::ostringstream msg;
    msg << "moment matrix ill-conditioned (estimate " << cond
        << "); increase alpha_c or reduce the stencil size";
    throw IllConditionedError(msg.str());
  }

  // A is symmetric, so Phi = B A^-1 solves A phi^T = B^T.
  Eigen::MatrixXd sol = lu.solve(rhs);

  Stencil st;
  st.eval_point = eval_point;
  st.dim = dim;
  st.condition = cond;
  st.node_indices.resize(n);
  std::iota(st.node_indices.begin(), st.node_indices.end(), 0);
  st.phi.assign(sol.col(0).data(), sol.col(0).data() + n);
  for (int a = 0; a < dim; ++a)
    st.dphi[a].assign(sol.col(1 + a).data(), sol.col(1 + a).data() + n);
  return st;
}

double interpolate(const Stencil &stencil, std::span<const double> nodal_values) {
  if (nodal_values.size() != stencil.phi.size())
    throw std::invalid_argument("value count does not match stencil size");
  double s = 0.0;
  for (size_t j = 0; j < stencil.phi.size(); ++j)
    s += stencil.phi[j] * nodal_values[j];
  return s;
}

StencilTable build_stencil_table(const NodeLattice &source,
                                 const std::vector<Point> &eval_nodes,
                                 double alpha_c, const StencilOptions &opts) {
  const int dim = source.dim;
  const int n_eval = static_cast<int>(eval_nodes.size());
  const int k = opts.global ? source.size()
                            : std::min(opts.size, source.size());

  StencilTable table;
  table.stencil_size = k;
  table.dim = dim;
  table.offsets.resize(n_eval + 1);
  for (int i = 0; i <= n_eval; ++i) table.offsets[i] = i * k;
  table.indices.resize(static_cast<size_t>(n_eval) * k);
  table.dwx.resize(table.indices.size());
  table.dwy.resize(table.indices.size());
  if (dim > 2) table.dwz.resize(table.indices.size());
  table.condition.resize(n_eval);

  NeighborSearch search(source);

  std::string first_error;
#ifdef MESHTD_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < n_eval; ++i) {
    if (!first_error.empty()) continue;
    std::vector<int> nbr;
    if (opts.global) {
      nbr = search.nearest(eval_nodes[i], source.size());
    } else {
      nbr = search.nearest(eval_nodes[i], k);
    }
    std::vector<Point> pts(nbr.size());
    for (size_t j = 0; j < nbr.size(); ++j) pts[j] = source.positions[nbr[j]];

    RbfKernel kernel;
    if (opts.normalization == AlphaNormalization::Spacing) {
      kernel = make_kernel(alpha_c, source.spacing);
    } else {
      double r2max = 0.0;
      for (const auto &p : pts) {
        double r2 = 0.0;
        for (int a = 0; a < dim; ++a) {
          const double d = eval_nodes[i][a] - p[a];
          r2 += d * d;
        }
        r2max = std::max(r2max, r2);
      }
      kernel = RbfKernel{alpha_c / r2max, alpha_c, source.spacing};
    }

    try {
      Stencil st = build_shape_functions(pts, eval_nodes[i], kernel, dim,
                                         opts.cond_limit);
      const int off = table.offsets[i];
      for (int j = 0; j < k; ++j) {
        table.indices[off + j] = nbr[j];
        table.dwx[off + j] = st.dphi[0][j];
        table.dwy[off + j] = st.dphi[1][j];
        if (dim > 2) table.dwz[off + j] = st.dphi[2][j];
      }
      table.condition[i] = st.condition;
    } catch (const IllConditionedError &e) {
#ifdef MESHTD_HAVE_OPENMP
#pragma omp critical
#endif
      {
        if (first_error.empty())
          first_error = std::string(e.what()) + " (eval node " +
                        std::to_string(i) + ")";
      }
    }
  }
  if (!first_error.empty()) throw IllConditionedError(first_error);
  return table;
}

}  // namespace meshtd
