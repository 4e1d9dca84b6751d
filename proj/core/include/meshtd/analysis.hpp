#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meshtd/media.hpp"

namespace meshtd {

/// Rectangular-lattice scalar snapshot, row-major with ix fastest.
struct FieldSnapshot {
  int nx = 0, ny = 0;
  double spacing = 0.0;
  double time = 0.0;
  std::vector<double> values;
  double at(int ix, int iy) const { return values[ix + nx * iy]; }
};

/// Divides by max |value|; an all-zero profile cannot be normalized.
std::vector<double> normalize(const std::vector<double> &profile);

/// Sum of squared differences, no square root and no 1/N factor.
double l2_error(const std::vector<double> &a, const std::vector<double> &b);

struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> values;
  int n_points = 0;          // profile length entering each L2 value
  double gate_fraction = 0;  // reference-amplitude gate used when recording
  double time_average() const;
};

struct FocalReport {
  bool formed = false;
  double inside_position = 0.0;   // metres along the slab axis
  double beyond_position = 0.0;
  double inside_amplitude = 0.0;
  double beyond_amplitude = 0.0;
  double expected_inside = 0.0;
  double expected_beyond = 0.0;
  double spacing = 0.0;
  double inside_error_dmin() const {
    return (inside_position - expected_inside) / spacing;
  }
  double beyond_error_dmin() const {
    return (beyond_position - expected_beyond) / spacing;
  }
};

/// Scans |E_z| along the lattice column through `source` and reports the
/// strongest local maxima inside the slab and beyond its back face, with
/// quadratic sub-node refinement. Expected image positions sit a/2 inside
/// and a/2 beyond for a source at a/2 above the front face.
FocalReport locate_foci(const FieldSnapshot &snapshot, const SlabGeometry &slab,
                        const Point &source);

/// CSV rows x_m,y_m,e_z in lattice (row-major) order.
void export_snapshot_csv(const FieldSnapshot &snapshot, const std::string &path);

/// Binary 8-bit PGM with min-max intensity mapping; file rows run north
/// (+y) to south. A constant field maps to mid-gray.
void export_snapshot_pgm(const FieldSnapshot &snapshot, const std::string &path);

}  // namespace meshtd
