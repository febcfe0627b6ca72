#include "perrk/relax.hpp"

#include <cmath>

namespace perrk {

RelaxMethod relax_method_from_name(const std::string& name) {
  if (name == "newton") return RelaxMethod::newton;
  if (name == "bisection") return RelaxMethod::bisection;
  if (name == "secant") return RelaxMethod::secant;
  throw Error("unknown relaxation method: " + name);
}

double total_entropy(const StateVector& U, const Semidiscretization& semi) {
  return semi.total_entropy(U);
}

void accumulate_entropy_change(const StateVector& U_stage, const StateVector& K_i, double b_i,
                               double dt, const Semidiscretization& semi, double& delta_h) {
  PERRK_REQUIRE(b_i != 0.0, "entropy change is only accumulated at stages with b_i != 0");
  delta_h += dt * b_i * semi.entropy_inner_product(U_stage, K_i);
}

namespace {

struct TrialState {
  StateVector buffer;

  const StateVector& at(const StateVector& U_n, const StateVector& d, double gamma, double dt) {
    buffer.resize(U_n.size());
    const double c = gamma * dt;
    for (std::size_t i = 0; i < U_n.size(); ++i) buffer[i] = U_n[i] + c * d[i];
    return buffer;
  }
};

}  // namespace

double relaxation_residual(double gamma, const StateVector& U_n, const StateVector& d, double dt,
                           double delta_h, double h_ref, const Semidiscretization& semi) {
  TrialState trial;
  return semi.total_entropy(trial.at(U_n, d, gamma, dt)) - h_ref - gamma * delta_h;
}

double relaxation_derivative(double gamma, const StateVector& U_n, const StateVector& d, double dt,
                             double delta_h, const Semidiscretization& semi) {
  TrialState trial;
  return dt * semi.entropy_inner_product(trial.at(U_n, d, gamma, dt), d) - delta_h;
}

RelaxationOutcome solve_relaxation(const RelaxationConfig& config, const StateVector& U_n,
                                   const StateVector& d, double dt, double delta_h, double h_ref,
                                   const Semidiscretization& semi, double gamma_seed) {
  RelaxationOutcome out;

  double dmax = 0.0;
  for (double v : d) dmax = std::max(dmax, std::abs(v));
  PERRK_REQUIRE(std::isfinite(dmax), "non-finite update direction");
  if (dmax == 0.0) {
    // Any gamma solves the relaxation equation for a vanishing direction.
    out.gamma = 1.0;
    return out;
  }

  TrialState trial;
  auto residual = [&](double gamma) {
    return semi.total_entropy(trial.at(U_n, d, gamma, dt)) - h_ref - gamma * delta_h;
  };
  auto fallback = [&](int iters, double res) {
    RelaxationOutcome fb;
    fb.gamma = 1.0;
    fb.iterations = iters;
    fb.residual = res;
    fb.fell_back = true;
    return fb;
  };

  switch (config.method) {
    case RelaxMethod::newton: {
      double gamma = config.seed_from_previous ? gamma_seed : 1.0;
      double r = residual(gamma);
      for (int it = 1; it <= config.max_iter; ++it) {
        out.iterations = it;
        if (std::abs(r) <= config.residual_tol) {
          out.gamma = gamma;
          out.residual = r;
          out.iterations = it - 1;
          return gamma > 0.0 ? out : fallback(it - 1, r);
        }
        const double dr =
            dt * semi.entropy_inner_product(trial.at(U_n, d, gamma, dt), d) - delta_h;
        if (dr == 0.0 || !std::isfinite(dr)) return fallback(it, r);
        const double step = r / dr;
        gamma -= step;
        if (!std::isfinite(gamma)) return fallback(it, r);
        r = residual(gamma);
        if (std::abs(r) <= config.residual_tol || std::abs(step) <= config.step_tol) {
          out.gamma = gamma;
          out.residual = r;
          return gamma > 0.0 ? out : fallback(it, r);
        }
      }
      return fallback(config.max_iter, r);
    }
    case RelaxMethod::bisection: {
      double lo = config.bracket_min, hi = config.bracket_max;
      double rlo = residual(lo), rhi = residual(hi);
      if (std::signbit(rlo) == std::signbit(rhi)) return fallback(0, rlo);
      double mid = 0.5 * (lo + hi), rmid = 0.0;
      for (int it = 1; it <= config.max_iter; ++it) {
        mid = 0.5 * (lo + hi);
        rmid = residual(mid);
        out.iterations = it;
        if (std::abs(rmid) <= config.residual_tol || (hi - lo) <= config.step_tol) break;
        if (std::signbit(rmid) == std::signbit(rlo)) {
          lo = mid;
          rlo = rmid;
        } else {
          hi = mid;
        }
      }
      out.gamma = mid;
      out.residual = rmid;
      if (!(std::abs(rmid) <= config.residual_tol || (hi - lo) <= config.step_tol) || mid <= 0.0)
        return fallback(out.iterations, rmid);
      return out;
    }
    case RelaxMethod::secant: {
      double g0 = config.seed_from_previous ? gamma_seed : 1.0;
      double g1 = g0 - 1e-6;
      double r0 = residual(g0), r1 = residual(g1);
      for (int it = 1; it <= config.max_iter; ++it) {
        out.iterations = it;
        if (r1 == r0) return fallback(it, r1);
        const double g2 = g1 - r1 * (g1 - g0) / (r1 - r0);
        if (!std::isfinite(g2)) return fallback(it, r1);
        g0 = g1;
        r0 = r1;
        g1 = g2;
        r1 = residual(g1);
        if (std::abs(r1) <= config.residual_tol || std::abs(g1 - g0) <= config.step_tol) {
          out.gamma = g1;
          out.residual = r1;
          return g1 > 0.0 ? out : fallback(it, r1);
        }
      }
      return fallback(config.max_iter, r1);
    }
  }
  return out;
}

StateVector relaxed_update(const StateVector& U_n, const StateVector& d, double gamma, double dt) {
  StateVector U(U_n.size());
  const double c = gamma * dt;
  for (std::size_t i = 0; i < U_n.size(); ++i) U[i] = U_n[i] + c * d[i];
  return U;
}

}  // namespace perrk
