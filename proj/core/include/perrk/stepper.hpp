#ifndef PERRK_STEPPER_HPP
#define PERRK_STEPPER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perrk/butcher.hpp"
#include "perrk/common.hpp"
#include "perrk/relax.hpp"
#include "perrk/semidisc.hpp"

namespace perrk {

enum class EntropyAnchor { step, initial };

struct CflRamp {
  double cfl0 = 0.5;
  double cfl_max = 0.5;
  double t_ramp = 1.0;

  double operator()(double t_since_start) const;
};

struct TimeControl {
  bool fixed = true;
  double dt = 0.0;    // fixed mode
  CflRamp ramp;       // CFL mode
};

struct IntegratorConfig {
  double t0 = 0.0;
  double tf = 1.0;
  TimeControl time;
  std::optional<RelaxationConfig> relaxation;  // disabled when empty
  EntropyAnchor anchor = EntropyAnchor::step;
  bool idt = false;  // advance the clock by dt instead of gamma*dt
  std::size_t max_steps = 10'000'000;
};

struct StepRecord {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;
  double gamma = 1.0;
  int newton_iters = 0;
  double entropy = 0.0;
  std::vector<double> invariants;
  bool fell_back = false;
};

struct PerkStepOptions {
  const RelaxationConfig* relaxation = nullptr;
  double gamma_override = 1.0;  // applied when relaxation is disabled
  double gamma_seed = 1.0;
  double h_ref = std::numeric_limits<double>::quiet_NaN();  // NaN: H(U_n)
  bool idt = false;
};

struct PerkStepResult {
  RelaxationOutcome outcome;
  double delta_h = 0.0;
  bool aborted = false;
  int bad_cell = -1;
  int bad_stage = -1;
};

/// One partitioned RK step with optional relaxation. U and t are advanced in
/// place; on a positivity abort they are left untouched.
PerkStepResult perk_step(StateVector& U, double& t, double dt, const PartitionFamily& family,
                         const PartitionMap& map, const Semidiscretization& semi,
                         const PerkStepOptions& opts);

/// dt = CFL(t) * min over cells of 1/nu, or the fixed dt (truncated to tf).
double compute_dt(const StateVector& U, const Semidiscretization& semi,
                  const IntegratorConfig& config, double t);

struct RunCallbacks {
  std::function<void(const StepRecord&, const StateVector&)> on_step;
  int snapshot_interval = 0;  // steps; 0 disables
  std::function<void(int step, double t, const StateVector&)> snapshot;
};

struct RunResult {
  StateVector U;
  std::vector<StepRecord> log;
  double final_time = 0.0;
  bool aborted = false;
  double abort_time = 0.0;
  std::string abort_reason;
  std::uint64_t n_rhs = 0;  // scalar RHS evaluations
  double initial_entropy = 0.0;
};

RunResult run(const IntegratorConfig& config, const PartitionFamily& family,
              const PartitionMap& map, const Semidiscretization& semi, StateVector U0,
              const RunCallbacks& callbacks = {});

struct ErrorNorms {
  std::vector<double> l1;    // domain-normalized
  std::vector<double> linf;
};

/// Quadrature-defect errors against an analytic solution, oversampled to a
/// degree-2k GLL rule.
ErrorNorms error_norms(const StateVector& U, const ExactSolution& exact, double t,
                       const Semidiscretization& semi);

void write_step_log_csv(const std::vector<StepRecord>& log, const Semidiscretization& semi,
                        const std::string& path);

}  // namespace perrk

#endif
