#include "perrk/mesh.hpp"

#include <cmath>
#include <memory>

#include "doctest.h"

using namespace perrk;

TEST_CASE("blast mesh layout") {
  const auto mesh = build_blast_mesh();
  CHECK(mesh.num_cells() == 64);
  CHECK(mesh.length() == doctest::Approx(4.0));
  for (int j = 0; j < mesh.num_cells(); ++j) CHECK(mesh.cell_size(j) > 0.0);
  // region sizes
  CHECK(mesh.cell_size(0) == doctest::Approx(1.0 / 8.0));
  CHECK(mesh.cell_size(10) == doctest::Approx(1.0 / 16.0));
  CHECK(mesh.cell_size(30) == doctest::Approx(1.0 / 32.0));
  CHECK(mesh.cell_size(63) == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("two-level advection mesh layout") {
  const auto mesh = build_two_level_advection_mesh();
  CHECK(mesh.num_cells() == 20);
  CHECK(mesh.length() == doctest::Approx(8.0));
  int fine = 0;
  for (int j = 0; j < mesh.num_cells(); ++j)
    if (mesh.cell_size(j) == doctest::Approx(0.25)) ++fine;
  CHECK(fine == 8);
}

TEST_CASE("vortex mesh mapping") {
  const auto mesh = build_vortex_mesh(32, 10.0);
  CHECK(mesh.num_cells() == 32 * 32);
  CHECK(mesh.x_edges.front() == doctest::Approx(-10.0));
  CHECK(mesh.x_edges.back() == doctest::Approx(10.0));
  CHECK(mesh.x_edges[16] == 0.0);
  double hmin = 1e300, hmax = 0.0;
  for (int i = 0; i < mesh.nx(); ++i) {
    hmin = std::min(hmin, mesh.dx(i));
    hmax = std::max(hmax, mesh.dx(i));
  }
  CHECK(hmax / hmin == doctest::Approx(8.0).epsilon(0.15));
}

TEST_CASE("viscous shock mesh") {
  const auto mesh = build_viscous_shock_mesh(12);
  CHECK(mesh.num_cells() == 12);
  CHECK_FALSE(mesh.periodic);
  CHECK(mesh.cell_size(0) == doctest::Approx(0.5));
  CHECK(mesh.cell_size(4) == doctest::Approx(0.25));
  CHECK_THROWS(build_viscous_shock_mesh(10));
}

TEST_CASE("assign_levels doubling brackets") {
  // uniform speeds: everything on the cheapest member
  CHECK(assign_levels({3.0, 3.0, 3.0}, 3) == std::vector<int>{3, 3, 3});

  // blast-style speeds proportional to 1/h
  CHECK(assign_levels({32.0, 16.0, 8.0}, 3) == std::vector<int>{1, 2, 3});

  // bracketing rule applied by hand
  CHECK(assign_levels({8.0, 4.1, 2.2, 1.0}, 3) == std::vector<int>{1, 2, 3, 3});

  // scale invariance
  const std::vector<double> nu = {7.3, 2.9, 1.4, 0.9};
  const auto base = assign_levels(nu, 4);
  std::vector<double> scaled = nu;
  for (double& v : scaled) v *= 137.0;
  CHECK(assign_levels(scaled, 4) == base);

  CHECK_THROWS(assign_levels({1.0}, 0));
  CHECK_THROWS(assign_levels({1.0, -2.0}, 2));
}

TEST_CASE("partition map interface ownership") {
  Mesh mesh = build_uniform_mesh1d(0.0, 8.0, 8, true);
  const auto map = make_partition_map(mesh, {2, 2, 1, 1, 2, 2, 2, 2}, 2);
  // cells adjacent to level-1 cells are owned by level 1
  CHECK(map.effective_level == std::vector<int>{2, 1, 1, 1, 1, 2, 2, 2});
  CHECK(map.raw_level == std::vector<int>{2, 2, 1, 1, 2, 2, 2, 2});
  const auto counts = map.cells_per_level();
  CHECK(counts[0] == 4);
  CHECK(counts[1] == 4);
}

TEST_CASE("characteristic speeds") {
  // advection: a=1, h=0.5, k=3 -> nu = 8
  auto adv = std::make_shared<AdvectionPhysics>(std::vector<double>{1.0});
  Mesh mesh = build_uniform_mesh1d(0.0, 1.0, 2, true);
  StateVector U(2 * 4, 1.0);
  const auto nu = characteristic_speed(mesh, *adv, U, 3);
  CHECK(nu[0] == doctest::Approx(8.0));

  // Euler at rest: nu = (k+1) c / h with c = sqrt(1.4)
  auto euler = std::make_shared<EulerPhysics>(1, 1.4);
  Mesh mesh1 = build_uniform_mesh1d(0.0, 1.0, 1, true);
  StateVector Ue;
  for (int l = 0; l < 1; ++l) {
    Ue.push_back(1.0);
    Ue.push_back(0.0);
    Ue.push_back(1.0 / 0.4);
  }
  const auto nue = characteristic_speed(mesh1, *euler, Ue, 0);
  CHECK(nue[0] == doctest::Approx(std::sqrt(1.4)).epsilon(1e-13));

  // blast IC on the three-level mesh: the finest cells carry the largest nu
  const auto blast = build_blast_mesh();
  Mesh bm = blast;
  StateVector Ub;
  const int n1 = 4;
  for (int j = 0; j < blast.num_cells(); ++j)
    for (int l = 0; l < n1; ++l) {
      const double x = blast.edges[j] + blast.cell_size(j) * (l + 0.5) / n1;
      double u[3];
      weak_blast_state(1.4, x, u);
      Ub.insert(Ub.end(), {u[0], u[1], u[2]});
    }
  const auto nub = characteristic_speed(bm, *euler, Ub, 3);
  int argmax = 0;
  for (int j = 0; j < blast.num_cells(); ++j)
    if (nub[j] > nub[argmax]) argmax = j;
  CHECK(blast.cell_size(argmax) == doctest::Approx(1.0 / 32.0));

  const auto levels = assign_levels(nub, 3);
  for (int j = 0; j < blast.num_cells(); ++j)
    if (blast.cell_size(j) == doctest::Approx(1.0 / 32.0).epsilon(1e-12)) CHECK(levels[j] == 1);
}

TEST_CASE("mesh dump format") {
  const auto text = mesh_to_text(build_uniform_mesh1d(0.0, 1.0, 2, true));
  CHECK(text == "0\n0.5\n1\n");
  Mesh2DRect m2;
  m2.x_edges = {0.0, 1.0};
  m2.y_edges = {0.0, 2.0};
  CHECK(mesh_to_text(m2) == "0\n1\n# y\n0\n2\n");
}
