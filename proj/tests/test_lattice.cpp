#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "meshtd/lattice.hpp"

using namespace meshtd;

TEST_CASE("staggered lattice spacing and offsets") {
  auto lat = build_staggered_lattice({0.03, 0.03, 0}, {61, 61, 1}, 3);
  CHECK(lat.e.spacing == doctest::Approx(0.0005).epsilon(1e-12));
  CHECK(lat.e.size() == 61 * 61);
  CHECK(lat.h.size() == 60 * 60);
  // H lattice offset by d_min/2 along both axes.
  CHECK(lat.h.positions[0][0] == doctest::Approx(0.00025));
  CHECK(lat.h.positions[0][1] == doctest::Approx(0.00025));
  // All positions inside the domain.
  for (const auto &p : lat.e.positions) {
    CHECK(p[0] >= 0.0);
    CHECK(p[0] <= 0.03 + 1e-15);
  }
}

TEST_CASE("pml depth tags") {
  auto lat = build_staggered_lattice({0.03, 0.03, 0}, {61, 61, 1}, 3);
  const double h = lat.e.spacing;
  // Face node carries rho = 3 d_min toward that face.
  CHECK(lat.e_tags[0].rho[0] == doctest::Approx(3 * h));
  CHECK(lat.e_tags[0].rho[1] == doctest::Approx(3 * h));
  // Innermost PML node has rho = d_min; the interface node is interior.
  CHECK(lat.e_tags[2].rho[0] == doctest::Approx(h));
  CHECK(lat.e_tags[3].rho[0] == 0.0);
  // Monotone non-decreasing toward each face along the bottom row.
  for (int ix = 1; ix < 31; ++ix)
    CHECK(lat.e_tags[ix].rho[0] <= lat.e_tags[ix - 1].rho[0]);
  // H node nearest a face sits half a spacing in.
  CHECK(lat.h_tags[0].rho[0] == doctest::Approx(3 * h - h / 2));
}

TEST_CASE("degenerate two-node lattice is all interior") {
  auto lat = build_staggered_lattice({0.01, 0.01, 0}, {2, 2, 1}, 0);
  CHECK(lat.e.size() == 4);
  CHECK(lat.h.size() == 1);
  for (const auto &t : lat.e_tags) CHECK(t.interior());
}

TEST_CASE("lattice construction rejects bad input") {
  CHECK_THROWS(build_staggered_lattice({-0.03, 0.03, 0}, {61, 61, 1}, 3));
  CHECK_THROWS(build_staggered_lattice({0.03, 0.03, 0}, {61, 61, 1}, 31));
  CHECK_THROWS(build_staggered_lattice({0.03, 0.03, 0}, {1, 61, 1}, 0));
}

TEST_CASE("nearest neighbors basics") {
  auto lat = build_staggered_lattice({0.03, 0.03, 0}, {61, 61, 1}, 0);
  NeighborSearch se(lat.e);

  SUBCASE("query at a node returns that node first") {
    auto nn = se.nearest(lat.e.positions[1234], 1);
    CHECK(nn[0] == 1234);
  }

  SUBCASE("interior H node sees 4 equidistant E nodes at d_min/sqrt(2)") {
    const double h = lat.e.spacing;
    const Point q = lat.h.positions[30 * 60 + 30];
    auto nn = se.nearest(q, 4);
    for (int idx : nn) {
      double d = std::hypot(q[0] - lat.e.positions[idx][0],
                            q[1] - lat.e.positions[idx][1]);
      CHECK(d == doctest::Approx(h / std::sqrt(2.0)).epsilon(1e-12));
    }
  }

  SUBCASE("count equal to the full lattice sorts every node") {
    auto lat2 = build_staggered_lattice({0.004, 0.004, 0}, {5, 5, 1}, 0);
    NeighborSearch s(lat2.e);
    auto nn = s.nearest({0.0, 0.0, 0}, lat2.e.size());
    CHECK(static_cast<int>(nn.size()) == lat2.e.size());
    double prev = -1.0;
    for (int idx : nn) {
      double d = std::hypot(lat2.e.positions[idx][0], lat2.e.positions[idx][1]);
      CHECK(d >= prev - 1e-15);
      prev = d;
    }
  }

  SUBCASE("count above node count and empty lattice are errors") {
    CHECK_THROWS(se.nearest({0, 0, 0}, lat.e.size() + 1));
    NodeLattice empty;
    CHECK_THROWS(NeighborSearch{empty});
  }
}

TEST_CASE("neighbor queries are deterministic and exact") {
  auto lat = build_staggered_lattice({0.03, 0.03, 0}, {31, 31, 1}, 0);
  NeighborSearch se(lat.e);
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> u(0.0, 0.03);
  for (int trial = 0; trial < 50; ++trial) {
    Point q{u(rng), u(rng), 0};
    auto a = se.nearest(q, 12);
    auto b = se.nearest(q, 12);
    CHECK(a == b);
    // Brute-force oracle with the same (distance, index) ordering.
    std::vector<std::pair<double, int>> all;
    for (int i = 0; i < lat.e.size(); ++i) {
      const double dx = q[0] - lat.e.positions[i][0];
      const double dy = q[1] - lat.e.positions[i][1];
      all.emplace_back(dx * dx + dy * dy, i);
    }
    std::sort(all.begin(), all.end());
    for (int j = 0; j < 12; ++j) CHECK(a[j] == all[j].second);
  }
}
