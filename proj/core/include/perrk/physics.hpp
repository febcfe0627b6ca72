#ifndef PERRK_PHYSICS_HPP
#define PERRK_PHYSICS_HPP

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "perrk/common.hpp"

namespace perrk {

enum class FluxTag { central, upwind, rusanov, hlle, hllc, ec };

FluxTag flux_tag_from_name(const std::string& name);
std::string flux_tag_name(FluxTag tag);

/// Equation set evaluated per node. Pointers address num_vars() doubles,
/// gradients num_vars() * dim() (direction-major).
class Physics {
 public:
  virtual ~Physics() = default;

  virtual int num_vars() const = 0;
  virtual int dim() const = 0;
  virtual std::string variable_name(int v) const = 0;
  virtual std::string name() const = 0;

  virtual void flux(const double* u, int dir, double* f) const = 0;
  /// Spectral radius of the directional flux Jacobian.
  virtual double max_wave_speed(const double* u, int dir) const = 0;
  virtual bool admissible(const double* u) const = 0;

  virtual double entropy(const double* u) const = 0;
  virtual void entropy_variables(const double* u, double* w) const = 0;
  virtual double entropy_flux(const double* u, int dir) const = 0;

  void numerical_flux(FluxTag tag, const double* ul, const double* ur, int dir, double* f) const;

  virtual bool has_viscous() const { return false; }
  virtual void viscous_flux(const double* /*u*/, const double* /*grad*/, int /*dir*/,
                            double* /*f*/) const {
    throw Error("physics has no viscous flux");
  }

 protected:
  virtual void upwind_flux(const double* ul, const double* ur, int dir, double* f) const;
  virtual void ec_flux(const double* ul, const double* ur, int dir, double* f) const;
  virtual void hlle_flux(const double* ul, const double* ur, int dir, double* f) const;
  virtual void hllc_flux(const double* ul, const double* ur, int dir, double* f) const;
};

class AdvectionPhysics : public Physics {
 public:
  explicit AdvectionPhysics(std::vector<double> velocity) : a_(std::move(velocity)) {
    PERRK_REQUIRE(a_.size() == 1 || a_.size() == 2, "advection velocity must be 1D or 2D");
  }

  int num_vars() const override { return 1; }
  int dim() const override { return static_cast<int>(a_.size()); }
  std::string variable_name(int) const override { return "u"; }
  std::string name() const override { return "advection"; }

  void flux(const double* u, int dir, double* f) const override { f[0] = a_[dir] * u[0]; }
  double max_wave_speed(const double*, int dir) const override { return std::abs(a_[dir]); }
  bool admissible(const double* u) const override { return std::isfinite(u[0]); }

  // s(u) = u^2: the quadratic (energy) entropy.
  double entropy(const double* u) const override { return u[0] * u[0]; }
  void entropy_variables(const double* u, double* w) const override { w[0] = 2.0 * u[0]; }
  double entropy_flux(const double* u, int dir) const override { return a_[dir] * u[0] * u[0]; }

  double velocity(int dir) const { return a_[dir]; }

 protected:
  void upwind_flux(const double* ul, const double* ur, int dir, double* f) const override;
  void ec_flux(const double* ul, const double* ur, int dir, double* f) const override;

 private:
  std::vector<double> a_;
};

/// Compressible Euler equations, 1D (rho, rho v, rho e) or
/// 2D (rho, rho vx, rho vy, rho e). Mathematical entropy
/// s = -rho log(p / rho^gamma); entropy variables are its exact gradient.
class EulerPhysics : public Physics {
 public:
  EulerPhysics(int dim, double gamma) : dim_(dim), gamma_(gamma) {
    PERRK_REQUIRE(dim == 1 || dim == 2, "Euler physics is 1D or 2D");
    PERRK_REQUIRE(gamma > 1.0, "gamma must exceed 1");
  }

  int num_vars() const override { return dim_ + 2; }
  int dim() const override { return dim_; }
  std::string variable_name(int v) const override;
  std::string name() const override { return dim_ == 1 ? "euler1d" : "euler2d"; }

  void flux(const double* u, int dir, double* f) const override;
  double max_wave_speed(const double* u, int dir) const override;
  bool admissible(const double* u) const override;

  double entropy(const double* u) const override;
  void entropy_variables(const double* u, double* w) const override;
  double entropy_flux(const double* u, int dir) const override;

  double gamma() const { return gamma_; }
  double pressure(const double* u) const;
  double sound_speed(const double* u) const;

 protected:
  void upwind_flux(const double* ul, const double* ur, int dir, double* f) const override;
  void ec_flux(const double* ul, const double* ur, int dir, double* f) const override;
  void hlle_flux(const double* ul, const double* ur, int dir, double* f) const override;
  void hllc_flux(const double* ul, const double* ur, int dir, double* f) const override;

  void wave_speed_estimates(const double* ul, const double* ur, int dir, double& sl,
                            double& sr) const;

  int dim_;
  double gamma_;
};

/// 1D Navier-Stokes-Fourier: Euler plus tau = 4/3 mu v_x and Fourier heat flux
/// q = -kappa T_x with T = p/rho (gas constant 1, c_p = gamma/(gamma-1),
/// kappa = c_p mu / Pr).
class NSFPhysics : public EulerPhysics {
 public:
  NSFPhysics(double gamma, double mu, double prandtl)
      : EulerPhysics(1, gamma), mu_(mu), prandtl_(prandtl) {
    PERRK_REQUIRE(mu >= 0.0 && prandtl > 0.0, "need mu >= 0 and Pr > 0");
  }

  std::string name() const override { return "nsf1d"; }
  bool has_viscous() const override { return true; }
  void viscous_flux(const double* u, const double* grad, int dir, double* f) const override;

  double mu() const { return mu_; }
  double prandtl() const { return prandtl_; }
  double kappa() const { return gamma_ / (gamma_ - 1.0) * mu_ / prandtl_; }
  double temperature(const double* u) const { return pressure(u) / u[0]; }

 private:
  double mu_;
  double prandtl_;
};

/// Becker's traveling viscous shock at the special Mach number 2/sqrt(3-gamma)
/// where the profile is explicit. The length scale l is the unique value for
/// which the printed profile solves the NSF system with tau = 4/3 mu v_x.
struct ViscousShockParams {
  double gamma = 5.0 / 3.0;
  double mu = 0.15;
  double rho0 = 1.0;
  double v = 1.0;
  // derived
  double mach = 0.0;
  double c0 = 0.0;
  double p0 = 0.0;
  double l = 0.0;

  ViscousShockParams() { finalize(); }
  void finalize() {
    mach = 2.0 / std::sqrt(3.0 - gamma);
    c0 = v / mach;
    p0 = c0 * c0 * rho0 / gamma;
    l = 8.0 * gamma * mu / (3.0 * (gamma + 1.0) * rho0 * v);
  }
};

/// Effective-momentum profile w(chi); series branch near chi = 0.
double viscous_shock_w(double chi);
/// Primal (rho, u, p) at (x, t).
std::array<double, 3> viscous_shock_exact(const ViscousShockParams& params, double x, double t);
void viscous_shock_state(const ViscousShockParams& params, double x, double t, double* u);

struct VortexParams {
  double gamma = 1.4;
  double mach = 0.4;
  double radius = 1.5;
  double intensity = 13.5;
  double rho_inf = 1.0;
  std::array<double, 2> v_inf = {1.0, 1.0};
  double half_width = 10.0;  // domain [-L, L]^2 for periodic wrapping
};

/// Isentropic vortex state at (x, y, t); the advected center is wrapped
/// periodically into the domain.
void isentropic_vortex_state(const VortexParams& params, double x, double y, double t, double* u);

void weak_blast_state(double gamma, double x, double* u);
double gaussian_pulse(double x);

// Spec-level convenience wrappers.
std::vector<double> physical_flux(const Physics& physics, const std::vector<double>& u, int dir);
std::pair<double, std::vector<double>> entropy_and_variables(const Physics& physics,
                                                             const std::vector<double>& u);
std::vector<double> numerical_flux(FluxTag tag, const Physics& physics,
                                   const std::vector<double>& ul, const std::vector<double>& ur,
                                   int dir);

/// (a-b)/(log a - log b) with a series branch guarding cancellation.
double logmean(double a, double b);

}  // namespace perrk

#endif
