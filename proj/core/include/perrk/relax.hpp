#ifndef PERRK_RELAX_HPP
#define PERRK_RELAX_HPP

#include <string>

#include "perrk/common.hpp"
#include "perrk/semidisc.hpp"

namespace perrk {

enum class RelaxMethod { newton, bisection, secant };
enum class EntropyMode { conservative, dissipative };

RelaxMethod relax_method_from_name(const std::string& name);

struct RelaxationConfig {
  RelaxMethod method = RelaxMethod::newton;
  int max_iter = 5;
  double residual_tol = 1e-14;
  double step_tol = 1e-15;
  double bracket_min = 0.8;  // bisection only
  double bracket_max = 1.2;
  bool seed_from_previous = true;
};

struct RelaxationOutcome {
  double gamma = 1.0;
  int iterations = 0;
  double residual = 0.0;
  bool fell_back = false;
};

double total_entropy(const StateVector& U, const Semidiscretization& semi);

/// delta_h += dt * b_i * quadrature<w(U_stage), K_i>; only stages with
/// b_i != 0 contribute to the update direction, so calls are restricted to
/// those.
void accumulate_entropy_change(const StateVector& U_stage, const StateVector& K_i, double b_i,
                               double dt, const Semidiscretization& semi, double& delta_h);

/// r(gamma) = H(U_n + gamma dt d) - h_ref - gamma delta_h. The step-wise
/// enforcement target is h_ref = H(U_n); anchoring to the initial entropy
/// passes h_ref = H(U_0).
double relaxation_residual(double gamma, const StateVector& U_n, const StateVector& d, double dt,
                           double delta_h, double h_ref, const Semidiscretization& semi);

double relaxation_derivative(double gamma, const StateVector& U_n, const StateVector& d, double dt,
                             double delta_h, const Semidiscretization& semi);

RelaxationOutcome solve_relaxation(const RelaxationConfig& config, const StateVector& U_n,
                                   const StateVector& d, double dt, double delta_h, double h_ref,
                                   const Semidiscretization& semi, double gamma_seed);

/// U_{n+1} = U_n + gamma dt d.
StateVector relaxed_update(const StateVector& U_n, const StateVector& d, double gamma, double dt);

}  // namespace perrk

#endif
