#include "perrk/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "perrk/mesh.hpp"

namespace perrk {

double CflRamp::operator()(double t_since_start) const {
  return std::min(cfl_max, cfl0 + (cfl_max - cfl0) * t_since_start / t_ramp);
}

PerkStepResult perk_step(StateVector& U, double& t, double dt, const PartitionFamily& family,
                         const PartitionMap& map, const Semidiscretization& semi,
                         const PerkStepOptions& opts) {
  PERRK_REQUIRE(dt > 0.0, "dt must be positive");
  PERRK_REQUIRE(static_cast<int>(map.effective_level.size()) == semi.num_cells(),
                "partition map does not match semidiscretization");
  const int S = family.S;
  const int R = family.R;
  const std::vector<double>& b = family.members.front().b;
  const std::vector<double>& c = family.members.front().c;
  const std::size_t M = U.size();
  const int n_cells = semi.num_cells();
  const int per_cell = semi.nodes_per_cell() * semi.num_vars();

  PerkStepResult result;

  // Per-level coefficient rows and activity, member r = R - level.
  std::vector<char> active(static_cast<std::size_t>(R) * S, 0);
  for (int lvl = 1; lvl <= R; ++lvl) {
    const int idx = family.member_index_for_level(lvl);
    for (int i : family.active_sets[idx]) active[static_cast<std::size_t>(lvl - 1) * S + i] = 1;
  }

  int bad_cell = -1;
  if (!semi.admissible(U, &bad_cell)) {
    result.aborted = true;
    result.bad_cell = bad_cell;
    result.bad_stage = 0;
    return result;
  }

  StateVector K1(M), Kprev(M, 0.0), Ustage(M), d(M, 0.0);
  double delta_h = 0.0;

  semi.rhs(t, U, K1);
  if (b[0] != 0.0) {
    delta_h += dt * b[0] * semi.entropy_inner_product(U, K1);
    for (std::size_t m = 0; m < M; ++m) d[m] += b[0] * K1[m];
  }

  std::vector<char> mask(static_cast<std::size_t>(n_cells), 0);
  for (int i = 1; i < S; ++i) {
    // Intermediate state, each cell with its own member's row.
    for (int cell = 0; cell < n_cells; ++cell) {
      const int lvl = map.effective_level[cell];
      const ButcherTableau& member = family.member_for_level(lvl);
      const double a1 = member.a(i, 0);
      const double ap = i >= 2 ? member.a(i, i - 1) : 0.0;
      const std::size_t base = static_cast<std::size_t>(cell) * per_cell;
      if (ap != 0.0) {
        for (int m = 0; m < per_cell; ++m)
          Ustage[base + m] = U[base + m] + dt * (a1 * K1[base + m] + ap * Kprev[base + m]);
      } else {
        for (int m = 0; m < per_cell; ++m) Ustage[base + m] = U[base + m] + dt * a1 * K1[base + m];
      }
    }

    if (!semi.admissible(Ustage, &bad_cell)) {
      result.aborted = true;
      result.bad_cell = bad_cell;
      result.bad_stage = i;
      return result;
    }

    bool all = true;
    for (int cell = 0; cell < n_cells; ++cell) {
      mask[cell] = active[static_cast<std::size_t>(map.effective_level[cell] - 1) * S + i];
      all = all && mask[cell];
    }
    (void)all;
    semi.rhs_masked(t + c[i] * dt, Ustage, Kprev, mask);

    if (b[i] != 0.0) {
      delta_h += dt * b[i] * semi.entropy_inner_product(Ustage, Kprev);
      for (std::size_t m = 0; m < M; ++m) d[m] += b[i] * Kprev[m];
    }
  }

  result.delta_h = delta_h;

  double gamma = opts.gamma_override;
  if (opts.relaxation != nullptr) {
    const double h_ref = std::isnan(opts.h_ref) ? semi.total_entropy(U) : opts.h_ref;
    result.outcome =
        solve_relaxation(*opts.relaxation, U, d, dt, delta_h, h_ref, semi, opts.gamma_seed);
    gamma = result.outcome.gamma;
  } else {
    result.outcome.gamma = gamma;
  }

  const double scale = gamma * dt;
  for (std::size_t m = 0; m < M; ++m) U[m] += scale * d[m];
  if (opts.relaxation != nullptr && !opts.idt)
    t += gamma * dt;
  else
    t += dt;
  return result;
}

double compute_dt(const StateVector& U, const Semidiscretization& semi,
                  const IntegratorConfig& config, double t) {
  if (config.time.fixed) {
    PERRK_REQUIRE(config.time.dt > 0.0, "fixed dt must be positive");
    return std::min(config.time.dt, config.tf - t);
  }
  const auto nu = characteristic_speed(semi.mesh(), semi.physics(), U, semi.basis().k);
  double nu_max = 0.0;
  for (double v : nu) nu_max = std::max(nu_max, v);
  PERRK_REQUIRE(nu_max > 0.0, "vanishing characteristic speed");
  return config.time.ramp(t - config.t0) / nu_max;
}

RunResult run(const IntegratorConfig& config, const PartitionFamily& family,
              const PartitionMap& map, const Semidiscretization& semi, StateVector U0,
              const RunCallbacks& callbacks) {
  PERRK_REQUIRE(config.tf >= config.t0, "tf must not precede t0");
  RunResult result;
  result.U = std::move(U0);
  result.initial_entropy = semi.total_entropy(result.U);
  semi.reset_evaluation_counter();

  double t = config.t0;
  double gamma_seed = 1.0;
  const double h0 = result.initial_entropy;
  const double t_eps = 1e-12 * std::max(1.0, std::abs(config.tf));
  int step = 0;

  while (t < config.tf - t_eps) {
    PERRK_REQUIRE(result.log.size() < config.max_steps, "step limit exceeded");
    const double dt = compute_dt(result.U, semi, config, t);

    PerkStepOptions opts;
    RelaxationConfig relax_cfg;
    if (config.relaxation) {
      relax_cfg = *config.relaxation;
      opts.relaxation = &relax_cfg;
      opts.gamma_seed = relax_cfg.seed_from_previous ? gamma_seed : 1.0;
      if (config.anchor == EntropyAnchor::initial) {
        opts.h_ref = h0;
      }
    }
    opts.idt = config.idt;

    const PerkStepResult sr = perk_step(result.U, t, dt, family, map, semi, opts);
    if (sr.aborted) {
      result.aborted = true;
      result.abort_time = t;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "positivity failure in cell %d at stage %d, t = %.6g",
                    sr.bad_cell, sr.bad_stage, t);
      result.abort_reason = buf;
      break;
    }
    gamma_seed = sr.outcome.fell_back ? 1.0 : sr.outcome.gamma;

    ++step;
    StepRecord rec;
    rec.step = step;
    rec.t = t;
    rec.dt = dt;
    rec.gamma = sr.outcome.gamma;
    rec.newton_iters = sr.outcome.iterations;
    rec.entropy = semi.total_entropy(result.U);
    rec.invariants = semi.integral_per_variable(result.U);
    rec.fell_back = sr.outcome.fell_back;
    result.log.push_back(rec);

    if (callbacks.on_step) callbacks.on_step(rec, result.U);
    if (callbacks.snapshot && callbacks.snapshot_interval > 0 &&
        step % callbacks.snapshot_interval == 0)
      callbacks.snapshot(step, t, result.U);
  }

  result.final_time = t;
  result.n_rhs = semi.rhs_cell_evaluations();
  return result;
}

ErrorNorms error_norms(const StateVector& U, const ExactSolution& exact, double t,
                       const Semidiscretization& semi) {
  const int k = semi.basis().k;
  const GLLBasis fine = gll_basis(2 * k);
  const auto L = interpolation_matrix(semi.basis().nodes, fine.nodes);
  const int n1 = semi.basis().n();
  const int f1 = fine.n();
  const int V = semi.num_vars();

  ErrorNorms norms;
  norms.l1.assign(V, 0.0);
  norms.linf.assign(V, 0.0);

  std::vector<double> uex(V), ufine(V);
  if (semi.dim() == 1) {
    const auto& mesh = std::get<Mesh1D>(semi.mesh());
    for (int cell = 0; cell < semi.num_cells(); ++cell) {
      const double h = mesh.cell_size(cell);
      for (int q = 0; q < f1; ++q) {
        const double x = mesh.edges[cell] + 0.5 * h * (fine.nodes[q] + 1.0);
        exact(x, 0.0, t, uex.data());
        for (int v = 0; v < V; ++v) {
          double val = 0.0;
          for (int l = 0; l < n1; ++l)
            val += L[static_cast<std::size_t>(q) * n1 + l] *
                   U[(static_cast<std::size_t>(cell) * n1 + l) * V + v];
          const double diff = std::abs(val - uex[v]);
          norms.l1[v] += 0.5 * h * fine.weights[q] * diff;
          norms.linf[v] = std::max(norms.linf[v], diff);
        }
      }
    }
  } else {
    const auto& mesh = std::get<Mesh2DRect>(semi.mesh());
    const int nodes = n1 * n1;
    std::vector<double> row(static_cast<std::size_t>(f1) * n1 * V);
    for (int cj = 0; cj < mesh.ny(); ++cj)
      for (int ci = 0; ci < mesh.nx(); ++ci) {
        const int cell = ci + mesh.nx() * cj;
        const double hx = mesh.dx(ci), hy = mesh.dy(cj);
        // interpolate along x for each original y-row
        for (int iy = 0; iy < n1; ++iy)
          for (int q = 0; q < f1; ++q)
            for (int v = 0; v < V; ++v) {
              double val = 0.0;
              for (int l = 0; l < n1; ++l)
                val += L[static_cast<std::size_t>(q) * n1 + l] *
                       U[(static_cast<std::size_t>(cell) * nodes + l + n1 * iy) * V + v];
              row[(static_cast<std::size_t>(q) + static_cast<std::size_t>(f1) * iy) * V + v] = val;
            }
        for (int qx = 0; qx < f1; ++qx)
          for (int qy = 0; qy < f1; ++qy) {
            const double x = mesh.x_edges[ci] + 0.5 * hx * (fine.nodes[qx] + 1.0);
            const double y = mesh.y_edges[cj] + 0.5 * hy * (fine.nodes[qy] + 1.0);
            exact(x, y, t, uex.data());
            for (int v = 0; v < V; ++v) {
              double val = 0.0;
              for (int iy = 0; iy < n1; ++iy)
                val += L[static_cast<std::size_t>(qy) * n1 + iy] *
                       row[(static_cast<std::size_t>(qx) + static_cast<std::size_t>(f1) * iy) * V +
                           v];
              const double diff = std::abs(val - uex[v]);
              norms.l1[v] += 0.25 * hx * hy * fine.weights[qx] * fine.weights[qy] * diff;
              norms.linf[v] = std::max(norms.linf[v], diff);
            }
          }
      }
  }
  for (int v = 0; v < V; ++v) norms.l1[v] /= semi.domain_measure();
  return norms;
}

void write_step_log_csv(const std::vector<StepRecord>& log, const Semidiscretization& semi,
                        const std::string& path) {
  std::ofstream os(path);
  PERRK_REQUIRE(os.good(), "cannot open " + path);
  const Physics& phys = semi.physics();
  os << "step,t,dt,gamma,newton_iters,H";
  if (phys.num_vars() == 1) {
    os << ",mass";
  } else {
    os << ",mass,momentum_x";
    if (phys.dim() == 2) os << ",momentum_y";
    os << ",energy";
  }
  os << ",fell_back\n";
  char buf[40];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
  };
  for (const auto& rec : log) {
    os << rec.step << ",";
    emit(rec.t);
    os << ",";
    emit(rec.dt);
    os << ",";
    emit(rec.gamma);
    os << "," << rec.newton_iters << ",";
    emit(rec.entropy);
    for (double v : rec.invariants) {
      os << ",";
      emit(v);
    }
    os << "," << (rec.fell_back ? 1 : 0) << "\n";
  }
}

}  // namespace perrk
