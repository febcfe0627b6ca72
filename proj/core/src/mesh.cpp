#include "perrk/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace perrk {

int mesh_num_cells(const Mesh& mesh) {
  return std::visit([](const auto& m) { return m.num_cells(); }, mesh);
}

int mesh_dim(const Mesh& mesh) { return std::holds_alternative<Mesh1D>(mesh) ? 1 : 2; }

std::vector<std::vector<int>> mesh_adjacency(const Mesh& mesh) {
  std::vector<std::vector<int>> adj(mesh_num_cells(mesh));
  if (const auto* m1 = std::get_if<Mesh1D>(&mesh)) {
    const int n = m1->num_cells();
    for (int j = 0; j < n; ++j) {
      int left = j - 1, right = j + 1;
      if (m1->periodic) {
        left = (j + n - 1) % n;
        right = (j + 1) % n;
      }
      if (left >= 0 && left < n) adj[j].push_back(left);
      if (right >= 0 && right < n && right != left) adj[j].push_back(right);
    }
    return adj;
  }
  const auto& m = std::get<Mesh2DRect>(mesh);
  const int nx = m.nx(), ny = m.ny();
  auto id = [nx](int i, int j) { return i + nx * j; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      auto push = [&](int ii, int jj) {
        if (m.periodic_x) ii = (ii + nx) % nx;
        if (m.periodic_y) jj = (jj + ny) % ny;
        if (ii >= 0 && ii < nx && jj >= 0 && jj < ny) adj[id(i, j)].push_back(id(ii, jj));
      };
      push(i - 1, j);
      push(i + 1, j);
      push(i, j - 1);
      push(i, j + 1);
    }
  return adj;
}

std::vector<int> PartitionMap::cells_per_level() const {
  std::vector<int> counts(R, 0);
  for (int lvl : effective_level) counts[lvl - 1]++;
  return counts;
}

PartitionMap make_partition_map(const Mesh& mesh, std::vector<int> levels, int R) {
  PERRK_REQUIRE(R >= 1, "R must be at least 1");
  PERRK_REQUIRE(static_cast<int>(levels.size()) == mesh_num_cells(mesh),
                "level list does not match mesh");
  for (int lvl : levels) PERRK_REQUIRE(lvl >= 1 && lvl <= R, "level out of range");

  PartitionMap map;
  map.R = R;
  map.raw_level = levels;
  map.effective_level = levels;
  const auto adj = mesh_adjacency(mesh);
  for (std::size_t c = 0; c < levels.size(); ++c)
    for (int nb : adj[c])
      map.effective_level[c] = std::min(map.effective_level[c], levels[nb]);
  return map;
}

std::vector<int> assign_levels(const std::vector<double>& nu, int R) {
  PERRK_REQUIRE(R >= 1, "R must be at least 1");
  PERRK_REQUIRE(!nu.empty(), "empty speed list");
  double nu_max = 0.0;
  for (double v : nu) {
    PERRK_REQUIRE(v > 0.0, "characteristic speeds must be positive");
    nu_max = std::max(nu_max, v);
  }
  std::vector<int> levels(nu.size());
  int max_assigned = 1;
  for (std::size_t c = 0; c < nu.size(); ++c) {
    const double doublings = std::log2(nu_max / nu[c]);
    int r = 1 + static_cast<int>(std::ceil(doublings - 1e-12));
    r = std::clamp(r, 1, R);
    levels[c] = r;
    max_assigned = std::max(max_assigned, r);
  }
  // Anchor the slowest cells at the cheapest member.
  const int shift = R - max_assigned;
  if (shift > 0)
    for (int& lvl : levels) lvl += shift;
  return levels;
}

std::vector<double> characteristic_speed(const Mesh& mesh, const Physics& physics,
                                         const StateVector& U, int k) {
  const int V = physics.num_vars();
  const int n1 = k + 1;
  std::vector<double> nu;
  if (const auto* m1 = std::get_if<Mesh1D>(&mesh)) {
    PERRK_REQUIRE(physics.dim() == 1, "1D mesh needs 1D physics");
    nu.resize(m1->num_cells());
    for (int j = 0; j < m1->num_cells(); ++j) {
      double rho = 0.0;
      for (int l = 0; l < n1; ++l)
        rho = std::max(rho, physics.max_wave_speed(&U[(static_cast<std::size_t>(j) * n1 + l) * V], 0));
      nu[j] = (k + 1) * rho / m1->cell_size(j);
    }
    return nu;
  }
  const auto& m = std::get<Mesh2DRect>(mesh);
  PERRK_REQUIRE(physics.dim() == 2, "2D mesh needs 2D physics");
  const int nodes = n1 * n1;
  nu.resize(m.num_cells());
  for (int cj = 0; cj < m.ny(); ++cj)
    for (int ci = 0; ci < m.nx(); ++ci) {
      const int cell = ci + m.nx() * cj;
      double rho_x = 0.0, rho_y = 0.0;
      for (int l = 0; l < nodes; ++l) {
        const double* u = &U[(static_cast<std::size_t>(cell) * nodes + l) * V];
        rho_x = std::max(rho_x, physics.max_wave_speed(u, 0));
        rho_y = std::max(rho_y, physics.max_wave_speed(u, 1));
      }
      nu[cell] = (k + 1) * std::max(rho_x / m.dx(ci), rho_y / m.dy(cj));
    }
  return nu;
}

namespace {

void append_uniform(std::vector<double>& edges, double from, double to, int n) {
  for (int i = 1; i <= n; ++i) edges.push_back(from + (to - from) * i / n);
}

}  // namespace

Mesh1D build_blast_mesh() {
  Mesh1D mesh;
  mesh.periodic = true;
  mesh.edges.push_back(-2.0);
  append_uniform(mesh.edges, -2.0, -1.0, 8);    // h = 1/8
  append_uniform(mesh.edges, -1.0, -0.5, 8);    // h = 1/16
  append_uniform(mesh.edges, -0.5, 0.5, 32);    // h = 1/32
  append_uniform(mesh.edges, 0.5, 1.0, 8);      // h = 1/16
  append_uniform(mesh.edges, 1.0, 2.0, 8);      // h = 1/8
  return mesh;
}

Mesh1D build_two_level_advection_mesh() {
  Mesh1D mesh;
  mesh.periodic = true;
  mesh.edges.push_back(-4.0);
  append_uniform(mesh.edges, -4.0, -1.0, 6);   // h = 1/2
  append_uniform(mesh.edges, -1.0, 1.0, 8);    // h = 1/4
  append_uniform(mesh.edges, 1.0, 4.0, 6);     // h = 1/2
  return mesh;
}

Mesh1D build_viscous_shock_mesh(int n_cells) {
  PERRK_REQUIRE(n_cells >= 6 && n_cells % 6 == 0, "viscous shock mesh needs 6m cells");
  const int m = n_cells / 6;
  Mesh1D mesh;
  mesh.periodic = false;
  mesh.edges.push_back(-2.0);
  append_uniform(mesh.edges, -2.0, -1.0, m);
  append_uniform(mesh.edges, -1.0, 1.0, 4 * m);
  append_uniform(mesh.edges, 1.0, 2.0, m);
  return mesh;
}

Mesh1D build_uniform_mesh1d(double x0, double x1, int n, bool periodic) {
  PERRK_REQUIRE(n >= 1 && x1 > x0, "bad interval mesh");
  Mesh1D mesh;
  mesh.periodic = periodic;
  mesh.edges.push_back(x0);
  append_uniform(mesh.edges, x0, x1, n);
  return mesh;
}

Mesh2DRect build_uniform_mesh2d(double half_width, int n) {
  Mesh2DRect mesh;
  mesh.x_edges.push_back(-half_width);
  append_uniform(mesh.x_edges, -half_width, half_width, n);
  mesh.y_edges = mesh.x_edges;
  return mesh;
}

Mesh2DRect build_vortex_mesh(int n, double half_width) {
  PERRK_REQUIRE(n >= 2 && n % 2 == 0, "vortex mesh needs an even cell count");
  Mesh2DRect mesh;
  mesh.x_edges.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double xi = -1.0 + 2.0 * i / n;
    const double axi = std::abs(xi);
    const double sgn = xi > 0 ? 1.0 : (xi < 0 ? -1.0 : 0.0);
    mesh.x_edges[i] = half_width * sgn * std::pow(axi, 1.4 + axi);
  }
  mesh.y_edges = mesh.x_edges;
  return mesh;
}

std::string mesh_to_text(const Mesh& mesh) {
  std::ostringstream os;
  auto emit = [&](const std::vector<double>& edges) {
    char buf[40];
    for (double e : edges) {
      std::snprintf(buf, sizeof(buf), "%.17g", e);
      os << buf << "\n";
    }
  };
  if (const auto* m1 = std::get_if<Mesh1D>(&mesh)) {
    emit(m1->edges);
  } else {
    const auto& m = std::get<Mesh2DRect>(mesh);
    emit(m.x_edges);
    os << "# y\n";
    emit(m.y_edges);
  }
  return os.str();
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream os(path);
  PERRK_REQUIRE(os.good(), "cannot open " + path);
  os << mesh_to_text(mesh);
}

}  // namespace perrk
