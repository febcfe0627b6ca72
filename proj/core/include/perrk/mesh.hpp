#ifndef PERRK_MESH_HPP
#define PERRK_MESH_HPP

#include <string>
#include <variant>
#include <vector>

#include "perrk/common.hpp"
#include "perrk/physics.hpp"

namespace perrk {

struct Mesh1D {
  std::vector<double> edges;  // strictly increasing, N+1 entries
  bool periodic = true;

  int num_cells() const { return static_cast<int>(edges.size()) - 1; }
  double cell_size(int j) const { return edges[j + 1] - edges[j]; }
  double length() const { return edges.back() - edges.front(); }
};

struct Mesh2DRect {
  std::vector<double> x_edges;
  std::vector<double> y_edges;
  bool periodic_x = true;
  bool periodic_y = true;

  int nx() const { return static_cast<int>(x_edges.size()) - 1; }
  int ny() const { return static_cast<int>(y_edges.size()) - 1; }
  int num_cells() const { return nx() * ny(); }
  double dx(int i) const { return x_edges[i + 1] - x_edges[i]; }
  double dy(int j) const { return y_edges[j + 1] - y_edges[j]; }
};

using Mesh = std::variant<Mesh1D, Mesh2DRect>;

int mesh_num_cells(const Mesh& mesh);
int mesh_dim(const Mesh& mesh);

/// Face-neighbor cell indices (periodic wrap included; -1 where a boundary
/// face has no neighbor). 1D cells are ordered left to right, 2D cells
/// x-fastest.
std::vector<std::vector<int>> mesh_adjacency(const Mesh& mesh);

/// Per-cell partition level; level 1 is the finest/most expensive member.
/// effective_level applies the interface rule: a cell touching a finer
/// neighbor is integrated with the finer (smaller) level.
struct PartitionMap {
  int R = 1;
  std::vector<int> raw_level;
  std::vector<int> effective_level;

  std::vector<int> cells_per_level() const;  // by effective level, 1-based -> index 0
};

PartitionMap make_partition_map(const Mesh& mesh, std::vector<int> levels, int R);

/// Doubling-bracket assignment from local characteristic speeds: cells within
/// a factor 2^(r-1) of the fastest cell get level r (clamped to R), then all
/// levels shift so the slowest cells sit on the cheapest member.
std::vector<int> assign_levels(const std::vector<double>& nu_per_cell, int R);

/// nu_cell = max over directions of (k+1) * rho_dir / h_dir, with rho_dir the
/// directional flux-Jacobian spectral radius maximized over the cell's nodes.
/// U uses the canonical layout with (k+1)^dim nodes per cell.
std::vector<double> characteristic_speed(const Mesh& mesh, const Physics& physics,
                                         const StateVector& U, int k);

Mesh1D build_blast_mesh();
Mesh1D build_two_level_advection_mesh();
/// [-2, 2] with [-1, 1] refined by a factor two; n_cells must be 6m.
Mesh1D build_viscous_shock_mesh(int n_cells);
Mesh1D build_uniform_mesh1d(double x0, double x1, int n, bool periodic = true);
Mesh2DRect build_uniform_mesh2d(double half_width, int n_per_dim);
/// Edge coordinates L sgn(xi) |xi|^(1.4+|xi|) for uniform xi in [-1,1].
Mesh2DRect build_vortex_mesh(int n_per_dim, double half_width);

std::string mesh_to_text(const Mesh& mesh);
void save_mesh(const Mesh& mesh, const std::string& path);

}  // namespace perrk

#endif
