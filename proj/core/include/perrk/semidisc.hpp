#ifndef PERRK_SEMIDISC_HPP
#define PERRK_SEMIDISC_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "perrk/basis.hpp"
#include "perrk/common.hpp"
#include "perrk/mesh.hpp"
#include "perrk/physics.hpp"

namespace perrk {

enum class VolumeMode { weak, flux_differencing };
enum class BoundaryTag { periodic, exact_dirichlet, outflow };

/// Exact solution hook used for Dirichlet data, viscous wall data, and error
/// measurement; y is ignored in 1D.
using ExactSolution = std::function<void(double x, double y, double t, double* u)>;

struct SemidiscretizationSpec {
  Mesh mesh;
  int polydeg = 3;
  std::shared_ptr<const Physics> physics;
  FluxTag surface_flux = FluxTag::rusanov;
  VolumeMode volume_mode = VolumeMode::weak;
  FluxTag volume_flux = FluxTag::central;
  bool viscous = false;
  BoundaryTag left_bc = BoundaryTag::periodic;
  BoundaryTag right_bc = BoundaryTag::periodic;
  ExactSolution exact_solution;  // required for exact_dirichlet / viscous walls
};

/// Nodal DGSEM on Gauss-Lobatto-Legendre points, 1D intervals or 2D
/// rectilinear tensor meshes. State layout: cell-major, node-major
/// (x-fastest in 2D), variable-minor.
class Semidiscretization {
 public:
  explicit Semidiscretization(SemidiscretizationSpec spec);

  int num_dofs() const { return static_cast<int>(measure_.size()) * V_; }
  int num_nodes() const { return static_cast<int>(measure_.size()); }
  int num_vars() const { return V_; }
  int num_cells() const { return n_cells_; }
  int nodes_per_cell() const { return nodes_per_cell_; }
  int dim() const { return dim_; }
  const GLLBasis& basis() const { return basis_; }
  const Mesh& mesh() const { return spec_.mesh; }
  const Physics& physics() const { return *spec_.physics; }
  const SemidiscretizationSpec& spec() const { return spec_; }

  const std::vector<double>& node_x() const { return node_x_; }
  const std::vector<double>& node_y() const { return node_y_; }
  /// Quadrature weight times geometric Jacobian per node.
  const std::vector<double>& node_measure() const { return measure_; }
  double domain_measure() const { return domain_measure_; }

  void rhs(double t, const StateVector& U, StateVector& out) const;
  /// RHS on the cells flagged in eval_cell; all other entries zero. Values on
  /// evaluated cells match the full RHS exactly.
  void rhs_masked(double t, const StateVector& U, StateVector& out,
                  const std::vector<char>& eval_cell) const;
  /// Cells whose effective partition level equals `level`.
  void rhs_partition_restricted(double t, const StateVector& U, StateVector& out,
                                const PartitionMap& map, int level) const;

  /// BR1 auxiliary gradients, one StateVector per direction.
  void br1_gradients(double t, const StateVector& U, std::vector<StateVector>& grads) const;

  double total_entropy(const StateVector& U) const;
  /// Quadrature of <w(U), K> over all nodes.
  double entropy_inner_product(const StateVector& U, const StateVector& K) const;
  std::vector<double> integral_per_variable(const StateVector& U) const;

  StateVector project(const std::function<void(double x, double y, double* u)>& fn) const;
  bool admissible(const StateVector& U, int* first_bad_cell = nullptr) const;

  std::uint64_t rhs_cell_evaluations() const { return rhs_cell_evals_; }
  void reset_evaluation_counter() const { rhs_cell_evals_ = 0; }

  void set_threads(int threads) { threads_ = threads < 1 ? 1 : threads; }
  int threads() const { return threads_; }

 private:
  void rhs_1d(double t, const StateVector& U, StateVector& out,
              const std::vector<char>& mask) const;
  void rhs_2d(double t, const StateVector& U, StateVector& out,
              const std::vector<char>& mask) const;
  void gradients_1d(double t, const StateVector& U, StateVector& grad,
                    const std::vector<char>& mask) const;
  void add_viscous_1d(double t, const StateVector& U, const StateVector& grad, StateVector& out,
                      const std::vector<char>& mask) const;
  void boundary_state(BoundaryTag tag, double x, double t, const double* interior,
                      double* ghost) const;
  /// Moving isothermal no-slip wall data: interior density with the exact
  /// solution's velocity and temperature.
  void viscous_wall_state(double x, double t, const double* interior, double* wall) const;
  void parallel_cells(int n, const std::function<void(int, int)>& work) const;

  SemidiscretizationSpec spec_;
  GLLBasis basis_;
  int dim_ = 1;
  int V_ = 1;
  int n_cells_ = 0;
  int nodes_per_cell_ = 0;
  std::vector<double> node_x_, node_y_, measure_;
  double domain_measure_ = 0.0;
  int threads_ = 1;
  mutable std::uint64_t rhs_cell_evals_ = 0;
};

/// Solution snapshot: "x[,y],<variable names>" header, one row per node.
void write_snapshot_csv(const Semidiscretization& semi, const StateVector& U,
                        const std::string& path);

}  // namespace perrk

#endif
