#include "perrk/semidisc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

namespace perrk {

namespace {
constexpr int kMaxVars = 4;
}

Semidiscretization::Semidiscretization(SemidiscretizationSpec spec)
    : spec_(std::move(spec)), basis_(gll_basis(spec_.polydeg)) {
  PERRK_REQUIRE(spec_.physics != nullptr, "missing physics");
  dim_ = mesh_dim(spec_.mesh);
  PERRK_REQUIRE(spec_.physics->dim() == dim_, "physics/mesh dimension mismatch");
  V_ = spec_.physics->num_vars();
  PERRK_REQUIRE(V_ <= kMaxVars, "too many variables");
  n_cells_ = mesh_num_cells(spec_.mesh);
  const int n1 = basis_.n();
  nodes_per_cell_ = dim_ == 1 ? n1 : n1 * n1;
  if (spec_.volume_mode == VolumeMode::flux_differencing) {
    PERRK_REQUIRE(spec_.volume_flux == FluxTag::central || spec_.volume_flux == FluxTag::ec,
                  "flux differencing needs a symmetric consistent volume flux");
  }
  if (spec_.viscous) {
    PERRK_REQUIRE(dim_ == 1, "viscous terms implemented in 1D");
    PERRK_REQUIRE(spec_.physics->has_viscous(), "physics has no viscous flux");
  }

  if (const auto* m1 = std::get_if<Mesh1D>(&spec_.mesh)) {
    if (!m1->periodic) {
      PERRK_REQUIRE(spec_.left_bc != BoundaryTag::periodic &&
                        spec_.right_bc != BoundaryTag::periodic,
                    "non-periodic mesh needs boundary conditions");
    }
    node_x_.resize(static_cast<std::size_t>(n_cells_) * n1);
    measure_.resize(node_x_.size());
    for (int j = 0; j < n_cells_; ++j) {
      const double h = m1->cell_size(j);
      PERRK_REQUIRE(h > 0.0, "cell sizes must be positive");
      for (int l = 0; l < n1; ++l) {
        node_x_[j * n1 + l] = m1->edges[j] + 0.5 * h * (basis_.nodes[l] + 1.0);
        measure_[j * n1 + l] = 0.5 * h * basis_.weights[l];
      }
    }
  } else {
    const auto& m = std::get<Mesh2DRect>(spec_.mesh);
    PERRK_REQUIRE(m.periodic_x && m.periodic_y, "2D meshes are periodic");
    node_x_.resize(static_cast<std::size_t>(n_cells_) * nodes_per_cell_);
    node_y_.resize(node_x_.size());
    measure_.resize(node_x_.size());
    for (int cj = 0; cj < m.ny(); ++cj)
      for (int ci = 0; ci < m.nx(); ++ci) {
        const int cell = ci + m.nx() * cj;
        const double hx = m.dx(ci), hy = m.dy(cj);
        PERRK_REQUIRE(hx > 0.0 && hy > 0.0, "cell sizes must be positive");
        for (int iy = 0; iy < n1; ++iy)
          for (int ix = 0; ix < n1; ++ix) {
            const std::size_t node =
                static_cast<std::size_t>(cell) * nodes_per_cell_ + ix + n1 * iy;
            node_x_[node] = m.x_edges[ci] + 0.5 * hx * (basis_.nodes[ix] + 1.0);
            node_y_[node] = m.y_edges[cj] + 0.5 * hy * (basis_.nodes[iy] + 1.0);
            measure_[node] = 0.25 * hx * hy * basis_.weights[ix] * basis_.weights[iy];
          }
      }
  }
  domain_measure_ = 0.0;
  for (double m : measure_) domain_measure_ += m;
}

void Semidiscretization::parallel_cells(int n, const std::function<void(int, int)>& work) const {
  if (threads_ <= 1 || n < 2 * threads_) {
    work(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (n + threads_ - 1) / threads_;
  for (int t = 0; t < threads_; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
}

void Semidiscretization::boundary_state(BoundaryTag tag, double x, double t,
                                        const double* interior, double* ghost) const {
  switch (tag) {
    case BoundaryTag::outflow:
      std::copy(interior, interior + V_, ghost);
      return;
    case BoundaryTag::exact_dirichlet:
      PERRK_REQUIRE(spec_.exact_solution, "exact_dirichlet needs an exact solution");
      spec_.exact_solution(x, 0.0, t, ghost);
      return;
    case BoundaryTag::periodic:
      throw Error("periodic boundary has no ghost state");
  }
}

void Semidiscretization::viscous_wall_state(double x, double t, const double* interior,
                                            double* wall) const {
  PERRK_REQUIRE(spec_.exact_solution, "viscous walls need an exact solution");
  const auto& euler = dynamic_cast<const EulerPhysics&>(*spec_.physics);
  double uex[kMaxVars];
  spec_.exact_solution(x, 0.0, t, uex);
  const double v_ex = uex[1] / uex[0];
  const double t_ex = euler.pressure(uex) / uex[0];
  const double rho = interior[0];
  const double p = rho * t_ex;
  wall[0] = rho;
  wall[1] = rho * v_ex;
  wall[2] = p / (euler.gamma() - 1.0) + 0.5 * rho * v_ex * v_ex;
}

void Semidiscretization::rhs(double t, const StateVector& U, StateVector& out) const {
  std::vector<char> mask(static_cast<std::size_t>(n_cells_), 1);
  rhs_masked(t, U, out, mask);
}

void Semidiscretization::rhs_masked(double t, const StateVector& U, StateVector& out,
                                    const std::vector<char>& mask) const {
  PERRK_REQUIRE(static_cast<int>(U.size()) == num_dofs(), "state size mismatch");
  PERRK_REQUIRE(static_cast<int>(mask.size()) == n_cells_, "mask size mismatch");
  out.assign(U.size(), 0.0);
  int n_eval = 0;
  for (char c : mask) n_eval += c ? 1 : 0;
  rhs_cell_evals_ += static_cast<std::uint64_t>(n_eval) * nodes_per_cell_ * V_;
  if (dim_ == 1)
    rhs_1d(t, U, out, mask);
  else
    rhs_2d(t, U, out, mask);
}

void Semidiscretization::rhs_partition_restricted(double t, const StateVector& U, StateVector& out,
                                                  const PartitionMap& map, int level) const {
  PERRK_REQUIRE(static_cast<int>(map.effective_level.size()) == n_cells_,
                "partition map does not match mesh");
  std::vector<char> mask(static_cast<std::size_t>(n_cells_), 0);
  for (int c = 0; c < n_cells_; ++c) mask[c] = map.effective_level[c] == level ? 1 : 0;
  rhs_masked(t, U, out, mask);
}

// ---------------------------------------------------------------------------
// 1D kernels
// ---------------------------------------------------------------------------

void Semidiscretization::rhs_1d(double t, const StateVector& U, StateVector& out,
                                const std::vector<char>& mask) const {
  const auto& m1 = std::get<Mesh1D>(spec_.mesh);
  const Physics& phys = *spec_.physics;
  const int n1 = basis_.n();
  const int N = n_cells_;
  const bool fluxdiff = spec_.volume_mode == VolumeMode::flux_differencing;

  StateVector grad;
  if (spec_.viscous) gradients_1d(t, U, grad, mask);

  auto node = [&](int cell, int l) { return (static_cast<std::size_t>(cell) * n1 + l) * V_; };

  parallel_cells(N, [&](int lo, int hi) {
    std::vector<double> f(static_cast<std::size_t>(n1) * V_);
    double fv[kMaxVars];
    for (int j = lo; j < hi; ++j) {
      if (!mask[j]) continue;
      const double jac = 2.0 / m1.cell_size(j);
      if (!fluxdiff) {
        for (int l = 0; l < n1; ++l) phys.flux(&U[node(j, l)], 0, &f[l * V_]);
        // weak volume: (1/w_l) sum_m D_{ml} w_m f_m
        for (int l = 0; l < n1; ++l) {
          double* o = &out[node(j, l)];
          for (int m = 0; m < n1; ++m) {
            const double coef = jac * basis_.d(m, l) * basis_.weights[m] / basis_.weights[l];
            for (int v = 0; v < V_; ++v) o[v] += coef * f[m * V_ + v];
          }
        }
      } else {
        for (int l = 0; l < n1; ++l) {
          const double dll = basis_.d(l, l);
          if (dll != 0.0) {
            phys.flux(&U[node(j, l)], 0, fv);
            for (int v = 0; v < V_; ++v) out[node(j, l) + v] -= jac * 2.0 * dll * fv[v];
          }
          for (int m = l + 1; m < n1; ++m) {
            phys.numerical_flux(spec_.volume_flux, &U[node(j, l)], &U[node(j, m)], 0, fv);
            const double clm = jac * 2.0 * basis_.d(l, m);
            const double cml = jac * 2.0 * basis_.d(m, l);
            for (int v = 0; v < V_; ++v) {
              out[node(j, l) + v] -= clm * fv[v];
              out[node(j, m) + v] -= cml * fv[v];
            }
          }
        }
      }
    }
  });

  // Face pass. Surface contribution for the weak form uses the bare numerical
  // flux, for flux differencing the (f* - f) correction.
  const double w0 = basis_.weights[0];
  double fstar[kMaxVars], ftrace[kMaxVars], ghost[kMaxVars];
  auto apply_face = [&](int cell_l, int cell_r, const double* ul, const double* ur) {
    phys.numerical_flux(spec_.surface_flux, ul, ur, 0, fstar);
    if (cell_l >= 0 && mask[cell_l]) {
      const double coef = 2.0 / (m1.cell_size(cell_l) * w0);
      double* o = &out[node(cell_l, n1 - 1)];
      if (fluxdiff) {
        phys.flux(ul, 0, ftrace);
        for (int v = 0; v < V_; ++v) o[v] -= coef * (fstar[v] - ftrace[v]);
      } else {
        for (int v = 0; v < V_; ++v) o[v] -= coef * fstar[v];
      }
    }
    if (cell_r >= 0 && mask[cell_r]) {
      const double coef = 2.0 / (m1.cell_size(cell_r) * w0);
      double* o = &out[node(cell_r, 0)];
      if (fluxdiff) {
        phys.flux(ur, 0, ftrace);
        for (int v = 0; v < V_; ++v) o[v] += coef * (fstar[v] - ftrace[v]);
      } else {
        for (int v = 0; v < V_; ++v) o[v] += coef * fstar[v];
      }
    }
  };

  for (int face = 1; face < N; ++face)
    apply_face(face - 1, face, &U[node(face - 1, n1 - 1)], &U[node(face, 0)]);
  if (m1.periodic) {
    apply_face(N - 1, 0, &U[node(N - 1, n1 - 1)], &U[node(0, 0)]);
  } else {
    boundary_state(spec_.left_bc, m1.edges.front(), t, &U[node(0, 0)], ghost);
    apply_face(-1, 0, ghost, &U[node(0, 0)]);
    boundary_state(spec_.right_bc, m1.edges.back(), t, &U[node(N - 1, n1 - 1)], ghost);
    apply_face(N - 1, -1, &U[node(N - 1, n1 - 1)], ghost);
  }

  if (spec_.viscous) add_viscous_1d(t, U, grad, out, mask);
}

void Semidiscretization::gradients_1d(double t, const StateVector& U, StateVector& grad,
                                      const std::vector<char>& mask) const {
  const auto& m1 = std::get<Mesh1D>(spec_.mesh);
  const int n1 = basis_.n();
  const int N = n_cells_;
  grad.assign(U.size(), 0.0);

  // Gradients are needed on evaluated cells and on their face neighbors
  // (the viscous interface flux averages both sides).
  std::vector<char> gmask(mask);
  for (int j = 0; j < N; ++j)
    if (mask[j]) {
      if (j > 0) gmask[j - 1] = 1;
      if (j + 1 < N) gmask[j + 1] = 1;
      if (m1.periodic) {
        gmask[(j + N - 1) % N] = 1;
        gmask[(j + 1) % N] = 1;
      }
    }

  auto node = [&](int cell, int l) { return (static_cast<std::size_t>(cell) * n1 + l) * V_; };

  // Strong-form derivative with central interface values.
  parallel_cells(N, [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      if (!gmask[j]) continue;
      const double jac = 2.0 / m1.cell_size(j);
      for (int l = 0; l < n1; ++l) {
        double* g = &grad[node(j, l)];
        for (int m = 0; m < n1; ++m) {
          const double coef = jac * basis_.d(l, m);
          for (int v = 0; v < V_; ++v) g[v] += coef * U[node(j, m) + v];
        }
      }
    }
  });

  const double w0 = basis_.weights[0];
  double ustar[kMaxVars], ghost[kMaxVars];
  auto lift = [&](int cell_l, int cell_r, const double* ul, const double* ur) {
    for (int v = 0; v < V_; ++v) ustar[v] = 0.5 * (ul[v] + ur[v]);
    if (cell_l >= 0 && gmask[cell_l]) {
      const double coef = 2.0 / (m1.cell_size(cell_l) * w0);
      double* g = &grad[node(cell_l, n1 - 1)];
      for (int v = 0; v < V_; ++v) g[v] += coef * (ustar[v] - ul[v]);
    }
    if (cell_r >= 0 && gmask[cell_r]) {
      const double coef = 2.0 / (m1.cell_size(cell_r) * w0);
      double* g = &grad[node(cell_r, 0)];
      for (int v = 0; v < V_; ++v) g[v] -= coef * (ustar[v] - ur[v]);
    }
  };

  for (int face = 1; face < N; ++face)
    lift(face - 1, face, &U[node(face - 1, n1 - 1)], &U[node(face, 0)]);
  if (m1.periodic) {
    lift(N - 1, 0, &U[node(N - 1, n1 - 1)], &U[node(0, 0)]);
  } else {
    // Parabolic boundary data: interior density with exact velocity and
    // temperature (moving isothermal, no-slip wall).
    viscous_wall_state(m1.edges.front(), t, &U[node(0, 0)], ghost);
    for (int v = 0; v < V_; ++v) ustar[v] = ghost[v];
    {
      const double coef = 2.0 / (m1.cell_size(0) * w0);
      double* g = &grad[node(0, 0)];
      for (int v = 0; v < V_; ++v) g[v] -= coef * (ustar[v] - U[node(0, 0) + v]);
    }
    viscous_wall_state(m1.edges.back(), t, &U[node(N - 1, n1 - 1)], ghost);
    {
      const double coef = 2.0 / (m1.cell_size(N - 1) * w0);
      double* g = &grad[node(N - 1, n1 - 1)];
      for (int v = 0; v < V_; ++v) g[v] += coef * (ghost[v] - U[node(N - 1, n1 - 1) + v]);
    }
  }
}

void Semidiscretization::add_viscous_1d(double t, const StateVector& U, const StateVector& grad,
                                        StateVector& out, const std::vector<char>& mask) const {
  const auto& m1 = std::get<Mesh1D>(spec_.mesh);
  const Physics& phys = *spec_.physics;
  const int n1 = basis_.n();
  const int N = n_cells_;
  auto node = [&](int cell, int l) { return (static_cast<std::size_t>(cell) * n1 + l) * V_; };

  // Nodal viscous fluxes on cells that can be touched by the face averages.
  StateVector g(U.size(), 0.0);
  parallel_cells(N, [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      bool needed = mask[j];
      if (!needed) {
        if (j > 0 && mask[j - 1]) needed = true;
        if (j + 1 < N && mask[j + 1]) needed = true;
        if (m1.periodic && (mask[(j + 1) % N] || mask[(j + N - 1) % N])) needed = true;
      }
      if (!needed) continue;
      for (int l = 0; l < n1; ++l)
        phys.viscous_flux(&U[node(j, l)], &grad[node(j, l)], 0, &g[node(j, l)]);
    }
  });

  // Weak-form divergence of g added to the RHS: u_t += d/dx g.
  parallel_cells(N, [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      if (!mask[j]) continue;
      const double jac = 2.0 / m1.cell_size(j);
      for (int l = 0; l < n1; ++l) {
        double* o = &out[node(j, l)];
        for (int m = 0; m < n1; ++m) {
          const double coef = jac * basis_.d(m, l) * basis_.weights[m] / basis_.weights[l];
          for (int v = 0; v < V_; ++v) o[v] -= coef * g[node(j, m) + v];
        }
      }
    }
  });

  const double w0 = basis_.weights[0];
  double gstar[kMaxVars], ghost[kMaxVars], gb[kMaxVars];
  auto lift = [&](int cell_l, int cell_r, const double* gl, const double* gr) {
    for (int v = 0; v < V_; ++v) gstar[v] = 0.5 * (gl[v] + gr[v]);
    if (cell_l >= 0 && mask[cell_l]) {
      const double coef = 2.0 / (m1.cell_size(cell_l) * w0);
      double* o = &out[node(cell_l, n1 - 1)];
      for (int v = 0; v < V_; ++v) o[v] += coef * gstar[v];
    }
    if (cell_r >= 0 && mask[cell_r]) {
      const double coef = 2.0 / (m1.cell_size(cell_r) * w0);
      double* o = &out[node(cell_r, 0)];
      for (int v = 0; v < V_; ++v) o[v] -= coef * gstar[v];
    }
  };

  for (int face = 1; face < N; ++face) lift(face - 1, face, &g[node(face - 1, n1 - 1)], &g[node(face, 0)]);
  if (m1.periodic) {
    lift(N - 1, 0, &g[node(N - 1, n1 - 1)], &g[node(0, 0)]);
  } else {
    viscous_wall_state(m1.edges.front(), t, &U[node(0, 0)], ghost);
    phys.viscous_flux(ghost, &grad[node(0, 0)], 0, gb);
    if (mask[0]) {
      const double coef = 2.0 / (m1.cell_size(0) * w0);
      double* o = &out[node(0, 0)];
      for (int v = 0; v < V_; ++v) o[v] -= coef * gb[v];
    }
    viscous_wall_state(m1.edges.back(), t, &U[node(N - 1, n1 - 1)], ghost);
    phys.viscous_flux(ghost, &grad[node(N - 1, n1 - 1)], 0, gb);
    if (mask[N - 1]) {
      const double coef = 2.0 / (m1.cell_size(N - 1) * w0);
      double* o = &out[node(N - 1, n1 - 1)];
      for (int v = 0; v < V_; ++v) o[v] += coef * gb[v];
    }
  }
}

void Semidiscretization::br1_gradients(double t, const StateVector& U,
                                       std::vector<StateVector>& grads) const {
  PERRK_REQUIRE(dim_ == 1, "BR1 gradients implemented in 1D");
  grads.resize(1);
  std::vector<char> mask(static_cast<std::size_t>(n_cells_), 1);
  gradients_1d(t, U, grads[0], mask);
}

// ---------------------------------------------------------------------------
// 2D kernels (periodic rectilinear tensor meshes)
// ---------------------------------------------------------------------------

void Semidiscretization::rhs_2d(double t, const StateVector& U, StateVector& out,
                                const std::vector<char>& mask) const {
  (void)t;
  const auto& m = std::get<Mesh2DRect>(spec_.mesh);
  const Physics& phys = *spec_.physics;
  const int n1 = basis_.n();
  const int nx = m.nx(), ny = m.ny();
  const bool fluxdiff = spec_.volume_mode == VolumeMode::flux_differencing;

  auto node = [&](int cell, int ix, int iy) {
    return (static_cast<std::size_t>(cell) * nodes_per_cell_ + ix + n1 * iy) * V_;
  };

  parallel_cells(n_cells_, [&](int lo, int hi) {
    std::vector<double> f(static_cast<std::size_t>(nodes_per_cell_) * V_);
    double fv[kMaxVars];
    for (int cell = lo; cell < hi; ++cell) {
      if (!mask[cell]) continue;
      const int ci = cell % nx, cj = cell / nx;
      const double jx = 2.0 / m.dx(ci), jy = 2.0 / m.dy(cj);
      if (!fluxdiff) {
        for (int dirn = 0; dirn < 2; ++dirn) {
          const double jac = dirn == 0 ? jx : jy;
          for (int iy = 0; iy < n1; ++iy)
            for (int ix = 0; ix < n1; ++ix)
              phys.flux(&U[node(cell, ix, iy)], dirn, &f[(ix + n1 * iy) * V_]);
          for (int iy = 0; iy < n1; ++iy)
            for (int ix = 0; ix < n1; ++ix) {
              double* o = &out[node(cell, ix, iy)];
              const int l = dirn == 0 ? ix : iy;
              for (int mm = 0; mm < n1; ++mm) {
                const double coef = jac * basis_.d(mm, l) * basis_.weights[mm] / basis_.weights[l];
                const int src = dirn == 0 ? (mm + n1 * iy) : (ix + n1 * mm);
                for (int v = 0; v < V_; ++v) o[v] += coef * f[src * V_ + v];
              }
            }
        }
      } else {
        // x-direction lines
        for (int iy = 0; iy < n1; ++iy)
          for (int l = 0; l < n1; ++l) {
            const double dll = basis_.d(l, l);
            if (dll != 0.0) {
              phys.flux(&U[node(cell, l, iy)], 0, fv);
              for (int v = 0; v < V_; ++v) out[node(cell, l, iy) + v] -= jx * 2.0 * dll * fv[v];
            }
            for (int mm = l + 1; mm < n1; ++mm) {
              phys.numerical_flux(spec_.volume_flux, &U[node(cell, l, iy)], &U[node(cell, mm, iy)],
                                  0, fv);
              const double clm = jx * 2.0 * basis_.d(l, mm);
              const double cml = jx * 2.0 * basis_.d(mm, l);
              for (int v = 0; v < V_; ++v) {
                out[node(cell, l, iy) + v] -= clm * fv[v];
                out[node(cell, mm, iy) + v] -= cml * fv[v];
              }
            }
          }
        // y-direction lines
        for (int ix = 0; ix < n1; ++ix)
          for (int l = 0; l < n1; ++l) {
            const double dll = basis_.d(l, l);
            if (dll != 0.0) {
              phys.flux(&U[node(cell, ix, l)], 1, fv);
              for (int v = 0; v < V_; ++v) out[node(cell, ix, l) + v] -= jy * 2.0 * dll * fv[v];
            }
            for (int mm = l + 1; mm < n1; ++mm) {
              phys.numerical_flux(spec_.volume_flux, &U[node(cell, ix, l)], &U[node(cell, ix, mm)],
                                  1, fv);
              const double clm = jy * 2.0 * basis_.d(l, mm);
              const double cml = jy * 2.0 * basis_.d(mm, l);
              for (int v = 0; v < V_; ++v) {
                out[node(cell, ix, l) + v] -= clm * fv[v];
                out[node(cell, ix, mm) + v] -= cml * fv[v];
              }
            }
          }
      }
    }
  });

  const double w0 = basis_.weights[0];
  double fstar[kMaxVars], ftrace[kMaxVars];

  // x-faces: between (ci-1, cj) and (ci, cj), including the periodic wrap.
  for (int cj = 0; cj < ny; ++cj)
    for (int ci = 0; ci < nx; ++ci) {
      const int cr = ci + nx * cj;
      const int cl = (ci + nx - 1) % nx + nx * cj;
      if (!mask[cl] && !mask[cr]) continue;
      for (int iy = 0; iy < n1; ++iy) {
        const double* ul = &U[node(cl, n1 - 1, iy)];
        const double* ur = &U[node(cr, 0, iy)];
        phys.numerical_flux(spec_.surface_flux, ul, ur, 0, fstar);
        if (mask[cl]) {
          const double coef = 2.0 / (m.dx((ci + nx - 1) % nx) * w0) * 1.0;
          double* o = &out[node(cl, n1 - 1, iy)];
          if (fluxdiff) {
            phys.flux(ul, 0, ftrace);
            for (int v = 0; v < V_; ++v) o[v] -= coef * (fstar[v] - ftrace[v]);
          } else {
            for (int v = 0; v < V_; ++v) o[v] -= coef * fstar[v];
          }
        }
        if (mask[cr]) {
          const double coef = 2.0 / (m.dx(ci) * w0);
          double* o = &out[node(cr, 0, iy)];
          if (fluxdiff) {
            phys.flux(ur, 0, ftrace);
            for (int v = 0; v < V_; ++v) o[v] += coef * (fstar[v] - ftrace[v]);
          } else {
            for (int v = 0; v < V_; ++v) o[v] += coef * fstar[v];
          }
        }
      }
    }

  // y-faces: between (ci, cj-1) and (ci, cj).
  for (int cj = 0; cj < ny; ++cj)
    for (int ci = 0; ci < nx; ++ci) {
      const int ct = ci + nx * cj;
      const int cb = ci + nx * ((cj + ny - 1) % ny);
      if (!mask[cb] && !mask[ct]) continue;
      for (int ix = 0; ix < n1; ++ix) {
        const double* ul = &U[node(cb, ix, n1 - 1)];
        const double* ur = &U[node(ct, ix, 0)];
        phys.numerical_flux(spec_.surface_flux, ul, ur, 1, fstar);
        if (mask[cb]) {
          const double coef = 2.0 / (m.dy((cj + ny - 1) % ny) * w0);
          double* o = &out[node(cb, ix, n1 - 1)];
          if (fluxdiff) {
            phys.flux(ul, 1, ftrace);
            for (int v = 0; v < V_; ++v) o[v] -= coef * (fstar[v] - ftrace[v]);
          } else {
            for (int v = 0; v < V_; ++v) o[v] -= coef * fstar[v];
          }
        }
        if (mask[ct]) {
          const double coef = 2.0 / (m.dy(cj) * w0);
          double* o = &out[node(ct, ix, 0)];
          if (fluxdiff) {
            phys.flux(ur, 1, ftrace);
            for (int v = 0; v < V_; ++v) o[v] += coef * (fstar[v] - ftrace[v]);
          } else {
            for (int v = 0; v < V_; ++v) o[v] += coef * fstar[v];
          }
        }
      }
    }
}

// ---------------------------------------------------------------------------

double Semidiscretization::total_entropy(const StateVector& U) const {
  const Physics& phys = *spec_.physics;
  double h = 0.0;
  for (std::size_t n = 0; n < measure_.size(); ++n) h += measure_[n] * phys.entropy(&U[n * V_]);
  return h;
}

double Semidiscretization::entropy_inner_product(const StateVector& U, const StateVector& K) const {
  const Physics& phys = *spec_.physics;
  double w[kMaxVars];
  double acc = 0.0;
  for (std::size_t n = 0; n < measure_.size(); ++n) {
    phys.entropy_variables(&U[n * V_], w);
    double dot = 0.0;
    for (int v = 0; v < V_; ++v) dot += w[v] * K[n * V_ + v];
    acc += measure_[n] * dot;
  }
  return acc;
}

std::vector<double> Semidiscretization::integral_per_variable(const StateVector& U) const {
  std::vector<double> total(V_, 0.0);
  for (std::size_t n = 0; n < measure_.size(); ++n)
    for (int v = 0; v < V_; ++v) total[v] += measure_[n] * U[n * V_ + v];
  return total;
}

StateVector Semidiscretization::project(
    const std::function<void(double x, double y, double* u)>& fn) const {
  StateVector U(static_cast<std::size_t>(num_dofs()));
  for (std::size_t n = 0; n < measure_.size(); ++n)
    fn(node_x_[n], dim_ == 2 ? node_y_[n] : 0.0, &U[n * V_]);
  return U;
}

bool Semidiscretization::admissible(const StateVector& U, int* first_bad_cell) const {
  const Physics& phys = *spec_.physics;
  for (int cell = 0; cell < n_cells_; ++cell)
    for (int l = 0; l < nodes_per_cell_; ++l) {
      const std::size_t n = static_cast<std::size_t>(cell) * nodes_per_cell_ + l;
      if (!phys.admissible(&U[n * V_])) {
        if (first_bad_cell) *first_bad_cell = cell;
        return false;
      }
    }
  return true;
}

void write_snapshot_csv(const Semidiscretization& semi, const StateVector& U,
                        const std::string& path) {
  std::ofstream os(path);
  PERRK_REQUIRE(os.good(), "cannot open " + path);
  os << "x";
  if (semi.dim() == 2) os << ",y";
  for (int v = 0; v < semi.num_vars(); ++v) os << "," << semi.physics().variable_name(v);
  os << "\n";
  char buf[40];
  const int V = semi.num_vars();
  for (int n = 0; n < semi.num_nodes(); ++n) {
    std::snprintf(buf, sizeof(buf), "%.17g", semi.node_x()[n]);
    os << buf;
    if (semi.dim() == 2) {
      std::snprintf(buf, sizeof(buf), "%.17g", semi.node_y()[n]);
      os << "," << buf;
    }
    for (int v = 0; v < V; ++v) {
      std::snprintf(buf, sizeof(buf), "%.17g", U[static_cast<std::size_t>(n) * V + v]);
      os << "," << buf;
    }
    os << "\n";
  }
}

}  // namespace perrk
