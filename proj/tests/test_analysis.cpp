#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "meshtd/analysis.hpp"

using namespace meshtd;

TEST_CASE("normalization") {
  CHECK(normalize({2.0, -4.0}) == std::vector<double>{0.5, -1.0});
  const std::vector<double> already{0.5, -1.0};
  CHECK(normalize(already) == already);
  CHECK(normalize({-3.0}) == std::vector<double>{-1.0});
  CHECK_THROWS(normalize({0.0, 0.0}));
}

TEST_CASE("l2 error") {
  CHECK(l2_error({1, 0}, {1, 0}) == 0.0);
  CHECK(l2_error({1, 0}, {0, 1}) == 2.0);
  CHECK(l2_error({1, 0}, {0, 1}) == l2_error({0, 1}, {1, 0}));
  CHECK_THROWS(l2_error({1, 0}, {1, 0, 0}));
  // normalization invariance: scaling both inputs leaves L2 unchanged
  std::vector<double> a{0.2, -0.7, 0.4}, b{0.1, -0.9, 0.2};
  std::vector<double> a2, b2;
  for (double v : a) a2.push_back(2 * v);
  for (double v : b) b2.push_back(5 * v);
  CHECK(l2_error(normalize(a), normalize(b)) ==
        doctest::Approx(l2_error(normalize(a2), normalize(b2))).epsilon(1e-14));
}

namespace {

FieldSnapshot synth(int n, double h, double y1, double y2, double a1, double a2) {
  FieldSnapshot s;
  s.nx = s.ny = n;
  s.spacing = h;
  s.values.assign(n * n, 0.0);
  const double w = 3 * h;
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double y = iy * h;
      s.values[ix + n * iy] =
          a1 * std::exp(-(y - y1) * (y - y1) / (2 * w * w)) +
          a2 * std::exp(-(y - y2) * (y - y2) / (2 * w * w));
    }
  return s;
}

}  // namespace

TEST_CASE("locate_foci recovers planted peaks") {
  const int n = 61;
  const double h = 5e-4;
  SlabGeometry slab{1, 0.01, 0.02};
  // peaks exactly at the expected image positions
  FieldSnapshot s = synth(n, h, 0.015, 0.005, 1.0, 0.8);
  FocalReport r = locate_foci(s, slab, {0.015, 0.025, 0});
  CHECK(r.formed);
  CHECK(r.inside_position == doctest::Approx(0.015).epsilon(1e-9));
  CHECK(r.beyond_position == doctest::Approx(0.005).epsilon(1e-9));
  CHECK(std::abs(r.inside_error_dmin()) < 1e-6);
  CHECK(r.expected_inside == doctest::Approx(0.015));
  CHECK(r.expected_beyond == doctest::Approx(0.005));

  // off-plane peaks are still recovered where planted
  FieldSnapshot s2 = synth(n, h, 0.0162, 0.0041, 1.0, 0.9);
  FocalReport r2 = locate_foci(s2, slab, {0.015, 0.025, 0});
  CHECK(r2.inside_position == doctest::Approx(0.0162).epsilon(1e-4));
  CHECK(r2.beyond_position == doctest::Approx(0.0041).epsilon(1e-4));
}

TEST_CASE("uniform field reports foci not formed") {
  FieldSnapshot s;
  s.nx = s.ny = 21;
  s.spacing = 5e-4;
  s.values.assign(21 * 21, 1.0);
  SlabGeometry slab{1, 0.003, 0.007};
  FocalReport r = locate_foci(s, slab, {0.005, 0.0085, 0});
  CHECK(!r.formed);
}

TEST_CASE("snapshot CSV export") {
  FieldSnapshot s;
  s.nx = s.ny = 2;
  s.spacing = 0.5;
  s.values = {1.0, 2.0, 3.0, 4.0};
  const std::string path = "/tmp/meshtd_test_snap.csv";
  export_snapshot_csv(s, path);
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "x_m,y_m,e_z");
  std::getline(f, line);
  CHECK(line == "0,0,1");
  std::getline(f, line);
  CHECK(line == "0.5,0,2");
  std::getline(f, line);
  CHECK(line == "0,0.5,3");
  std::getline(f, line);
  CHECK(line == "0.5,0.5,4");
}

TEST_CASE("snapshot PGM export") {
  SUBCASE("constant field maps to mid-gray") {
    FieldSnapshot s;
    s.nx = s.ny = 3;
    s.spacing = 1.0;
    s.values.assign(9, 7.5);
    const std::string path = "/tmp/meshtd_test_const.pgm";
    export_snapshot_pgm(s, path);
    std::ifstream f(path, std::ios::binary);
    std::string magic;
    int w, h, maxv;
    f >> magic >> w >> h >> maxv;
    CHECK(magic == "P5");
    CHECK(w == 3);
    CHECK(h == 3);
    CHECK(maxv == 255);
    f.get();
    for (int i = 0; i < 9; ++i) CHECK(f.get() == 128);
  }

  SUBCASE("north is +y: the top file row holds the max-y lattice row") {
    FieldSnapshot s;
    s.nx = s.ny = 2;
    s.spacing = 1.0;
    s.values = {0.0, 0.0, 1.0, 1.0};  // bright row at iy = 1 (max y)
    const std::string path = "/tmp/meshtd_test_north.pgm";
    export_snapshot_pgm(s, path);
    std::ifstream f(path, std::ios::binary);
    std::string magic;
    int w, h, maxv;
    f >> magic >> w >> h >> maxv;
    f.get();
    CHECK(f.get() == 255);  // first data row = iy = 1
    CHECK(f.get() == 255);
    CHECK(f.get() == 0);
    CHECK(f.get() == 0);
  }
}

TEST_CASE("error series time average") {
  ErrorSeries es;
  es.times = {1, 2, 3};
  es.values = {2.0, 4.0, 6.0};
  CHECK(es.time_average() == doctest::Approx(4.0));
  ErrorSeries empty;
  CHECK(empty.time_average() == 0.0);
}
