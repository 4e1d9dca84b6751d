#include "meshtd/pml.hpp"

#include <cmath>
#include <stdexcept>

namespace meshtd {

double sigma_max(const PmlSpec &spec) {
  if (!(spec.reflection_coeff > 0 && spec.reflection_coeff < 1))
    throw std::invalid_argument("reflection coefficient must be in (0,1)");
  if (spec.grading_order < 0) throw std::invalid_argument("grading order < 0");
  if (spec.thickness <= 0) throw std::invalid_argument("thickness must be > 0");
  return -(spec.grading_order + 1) * std::log(spec.reflection_coeff) /
         (2.0 * spec.impedance * spec.thickness);
}

double graded_sigma(const PmlSpec &spec, double rho) {
  if (rho < 0 || rho > spec.thickness)
    throw std::invalid_argument("depth outside [0, thickness]");
  if (rho == 0.0) return 0.0;
  return sigma_max(spec) * std::pow(rho / spec.thickness, spec.grading_order);
}

ConductivityField assign_conductivities(const std::vector<PmlDepthTag> &tags,
                                        const PmlSpec &spec, int dim) {
  ConductivityField f;
  f.dim = dim;
  const double match = mu0 / eps0;
  for (int a = 0; a < dim; ++a) {
    f.sigma_e[a].resize(tags.size());
    f.sigma_m[a].resize(tags.size());
  }
  for (size_t i = 0; i < tags.size(); ++i) {
    for (int a = 0; a < dim; ++a) {
      const double rho = tags[i].rho[a];
      double se = 0.0;
      if (rho > 0.0) {
        PmlSpec s = spec;
        if (tags[i].thickness[a] > 0) s.thickness = tags[i].thickness[a];
        se = graded_sigma(s, std::min(rho, s.thickness));
      }
      f.sigma_e[a][i] = se;
      f.sigma_m[a][i] = se * match;
    }
  }
  return f;
}

}  // namespace meshtd
