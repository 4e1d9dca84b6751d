#include "meshtd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace meshtd {

std::vector<double> normalize(const std::vector<double> &profile) {
  double m = 0.0;
  for (double v : profile) m = std::max(m, std::abs(v));
  if (m == 0.0) throw std::invalid_argument("cannot normalize an all-zero profile");
  std::vector<double> out(profile.size());
  for (size_t i = 0; i < profile.size(); ++i) out[i] = profile[i] / m;
  return out;
}

double l2_error(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("profile lengths differ");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double ErrorSeries::time_average() const {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / values.size();
}

FocalReport locate_foci(const FieldSnapshot &snapshot, const SlabGeometry &slab,
                        const Point &source) {
  if (slab.axis != 1)
    throw std::invalid_argument("focal scan expects a y-axis slab");
  FocalReport rep;
  rep.spacing = snapshot.spacing;
  const double a_half = source[1] - slab.hi;  // source height above the front
  rep.expected_inside = slab.hi - a_half;
  rep.expected_beyond = slab.lo - a_half;

  const int ix = static_cast<int>(std::lround(source[0] / snapshot.spacing));
  const int col = std::clamp(ix, 0, snapshot.nx - 1);

  struct Peak {
    double pos, amp;
  };
  // Face rows belong to the interface, not to either image region.
  std::vector<Peak> inside, beyond;
  const double htol = 1e-9 * snapshot.spacing;
  for (int iy = 1; iy + 1 < snapshot.ny; ++iy) {
    const double y = iy * snapshot.spacing;
    if (y >= slab.hi - htol) continue;  // only below the front face
    const double vm = std::abs(snapshot.at(col, iy - 1));
    const double v0 = std::abs(snapshot.at(col, iy));
    const double vp = std::abs(snapshot.at(col, iy + 1));
    if (!(v0 > vm && v0 > vp)) continue;
    const double den = vm - 2.0 * v0 + vp;
    const double off = den != 0.0 ? 0.5 * (vm - vp) / den : 0.0;
    const double pos = y + off * snapshot.spacing;
    if (y > slab.lo + htol)
      inside.push_back({pos, v0});
    else if (y < slab.lo - htol)
      beyond.push_back({pos, v0});
  }
  auto best = [](const std::vector<Peak> &v) {
    return std::max_element(v.begin(), v.end(),
                            [](const Peak &a, const Peak &b) { return a.amp < b.amp; });
  };
  if (inside.empty() || beyond.empty()) {
    rep.formed = false;
    return rep;
  }
  const Peak in = *best(inside);
  const Peak be = *best(beyond);
  rep.formed = true;
  rep.inside_position = in.pos;
  rep.inside_amplitude = in.amp;
  rep.beyond_position = be.pos;
  rep.beyond_amplitude = be.amp;
  return rep;
}

void export_snapshot_csv(const FieldSnapshot &snapshot, const std::string &path) {
  if (snapshot.values.empty()) throw std::invalid_argument("empty snapshot");
  std::FILE *f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot write " + path);
  std::fputs("x_m,y_m,e_z\n", f);
  for (int iy = 0; iy < snapshot.ny; ++iy)
    for (int ix = 0; ix < snapshot.nx; ++ix)
      std::fprintf(f, "%.17g,%.17g,%.17g\n", ix * snapshot.spacing,
                   iy * snapshot.spacing, snapshot.at(ix, iy));
  std::fclose(f);
}

void export_snapshot_pgm(const FieldSnapshot &snapshot, const std::string &path) {
  if (snapshot.values.empty()) throw std::invalid_argument("empty snapshot");
  double lo = snapshot.values[0], hi = snapshot.values[0];
  for (double v : snapshot.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "P5\n" << snapshot.nx << " " << snapshot.ny << "\n255\n";
  const double span = hi - lo;
  for (int iy = snapshot.ny - 1; iy >= 0; --iy)  // north = +y at file row 0
    for (int ix = 0; ix < snapshot.nx; ++ix) {
      unsigned char px = 128;
      if (span > 0.0)
        px = static_cast<unsigned char>(
            std::lround((snapshot.at(ix, iy) - lo) / span * 255.0));
      f.put(static_cast<char>(px));
    }
}

}  // namespace meshtd
