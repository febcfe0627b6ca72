#include "perrk/physics.hpp"

#include <algorithm>
#include <cmath>

namespace perrk {

FluxTag flux_tag_from_name(const std::string& name) {
  if (name == "central") return FluxTag::central;
  if (name == "upwind" || name == "godunov") return FluxTag::upwind;
  if (name == "rusanov" || name == "llf") return FluxTag::rusanov;
  if (name == "hlle") return FluxTag::hlle;
  if (name == "hllc") return FluxTag::hllc;
  if (name == "ec" || name == "ranocha") return FluxTag::ec;
  throw Error("unknown flux tag: " + name);
}

std::string flux_tag_name(FluxTag tag) {
  switch (tag) {
    case FluxTag::central: return "central";
    case FluxTag::upwind: return "upwind";
    case FluxTag::rusanov: return "rusanov";
    case FluxTag::hlle: return "hlle";
    case FluxTag::hllc: return "hllc";
    case FluxTag::ec: return "ec";
  }
  return "?";
}

double logmean(double a, double b) {
  const double f = (a - b) / (a + b);
  const double u = f * f;
  if (u < 1e-4) {
    // log(a/b) = 2f (1 + u/3 + u^2/5 + u^3/7 + ...)
    return 0.5 * (a + b) / (1.0 + u / 3.0 + u * u / 5.0 + u * u * u / 7.0);
  }
  return (a - b) / std::log(a / b);
}

void Physics::numerical_flux(FluxTag tag, const double* ul, const double* ur, int dir,
                             double* f) const {
  PERRK_REQUIRE(admissible(ul) && admissible(ur), "inadmissible state passed to numerical flux");
  const int V = num_vars();
  switch (tag) {
    case FluxTag::central: {
      std::vector<double> fl(V), fr(V);
      flux(ul, dir, fl.data());
      flux(ur, dir, fr.data());
      for (int v = 0; v < V; ++v) f[v] = 0.5 * (fl[v] + fr[v]);
      return;
    }
    case FluxTag::rusanov: {
      std::vector<double> fl(V), fr(V);
      flux(ul, dir, fl.data());
      flux(ur, dir, fr.data());
      const double lam = std::max(max_wave_speed(ul, dir), max_wave_speed(ur, dir));
      for (int v = 0; v < V; ++v) f[v] = 0.5 * (fl[v] + fr[v]) - 0.5 * lam * (ur[v] - ul[v]);
      return;
    }
    case FluxTag::upwind: upwind_flux(ul, ur, dir, f); return;
    case FluxTag::ec: ec_flux(ul, ur, dir, f); return;
    case FluxTag::hlle: hlle_flux(ul, ur, dir, f); return;
    case FluxTag::hllc: hllc_flux(ul, ur, dir, f); return;
  }
}

void Physics::upwind_flux(const double*, const double*, int, double*) const {
  throw Error("upwind flux only available for advection");
}
void Physics::ec_flux(const double*, const double*, int, double*) const {
  throw Error("no entropy-conservative flux for this physics");
}
void Physics::hlle_flux(const double*, const double*, int, double*) const {
  throw Error("HLLE flux not available for this physics");
}
void Physics::hllc_flux(const double*, const double*, int, double*) const {
  throw Error("HLLC flux not available for this physics");
}

void AdvectionPhysics::upwind_flux(const double* ul, const double* ur, int dir, double* f) const {
  const double a = a_[dir];
  f[0] = 0.5 * a * (ul[0] + ur[0]) - 0.5 * std::abs(a) * (ur[0] - ul[0]);
}

// Central is the entropy-conservative flux for s = u^2.
void AdvectionPhysics::ec_flux(const double* ul, const double* ur, int dir, double* f) const {
  f[0] = 0.5 * a_[dir] * (ul[0] + ur[0]);
}

std::string EulerPhysics::variable_name(int v) const {
  if (v == 0) return "rho";
  if (v == num_vars() - 1) return "rho_e";
  if (dim_ == 1) return "rho_v";
  return v == 1 ? "rho_v_x" : "rho_v_y";
}

double EulerPhysics::pressure(const double* u) const {
  double kinetic = 0.0;
  for (int d = 0; d < dim_; ++d) kinetic += u[1 + d] * u[1 + d];
  kinetic /= (2.0 * u[0]);
  return (gamma_ - 1.0) * (u[dim_ + 1] - kinetic);
}

double EulerPhysics::sound_speed(const double* u) const {
  return std::sqrt(gamma_ * pressure(u) / u[0]);
}

void EulerPhysics::flux(const double* u, int dir, double* f) const {
  const double rho = u[0];
  const double p = pressure(u);
  const double vdir = u[1 + dir] / rho;
  f[0] = u[1 + dir];
  for (int d = 0; d < dim_; ++d) f[1 + d] = u[1 + d] * vdir;
  f[1 + dir] += p;
  f[dim_ + 1] = (u[dim_ + 1] + p) * vdir;
}

double EulerPhysics::max_wave_speed(const double* u, int dir) const {
  return std::abs(u[1 + dir] / u[0]) + sound_speed(u);
}

bool EulerPhysics::admissible(const double* u) const {
  if (!(u[0] > 0.0)) return false;
  if (!(pressure(u) > 0.0)) return false;
  for (int v = 0; v < num_vars(); ++v)
    if (!std::isfinite(u[v])) return false;
  return true;
}

double EulerPhysics::entropy(const double* u) const {
  return -u[0] * std::log(pressure(u) / std::pow(u[0], gamma_));
}

void EulerPhysics::entropy_variables(const double* u, double* w) const {
  const double rho = u[0];
  const double p = pressure(u);
  const double s_therm = std::log(p / std::pow(rho, gamma_));
  double v2 = 0.0;
  for (int d = 0; d < dim_; ++d) {
    const double vd = u[1 + d] / rho;
    v2 += vd * vd;
    w[1 + d] = (gamma_ - 1.0) * rho * vd / p;
  }
  w[0] = gamma_ - s_therm - (gamma_ - 1.0) * rho * v2 / (2.0 * p);
  w[dim_ + 1] = -(gamma_ - 1.0) * rho / p;
}

double EulerPhysics::entropy_flux(const double* u, int dir) const {
  return (u[1 + dir] / u[0]) * entropy(u);
}

void EulerPhysics::upwind_flux(const double*, const double*, int, double*) const {
  throw Error("upwind flux only available for advection");
}

// Kinetic-energy-preserving, entropy-conservative two-point flux (Ranocha form).
void EulerPhysics::ec_flux(const double* ul, const double* ur, int dir, double* f) const {
  const double rho_l = ul[0], rho_r = ur[0];
  const double p_l = pressure(ul), p_r = pressure(ur);
  const double rho_log = logmean(rho_l, rho_r);
  const double inv_rho_p_log = logmean(rho_l / p_l, rho_r / p_r);

  double v_l[2] = {0, 0}, v_r[2] = {0, 0}, v_avg[2] = {0, 0};
  double vl_vr = 0.0;
  for (int d = 0; d < dim_; ++d) {
    v_l[d] = ul[1 + d] / rho_l;
    v_r[d] = ur[1 + d] / rho_r;
    v_avg[d] = 0.5 * (v_l[d] + v_r[d]);
    vl_vr += v_l[d] * v_r[d];
  }
  const double p_avg = 0.5 * (p_l + p_r);

  const double f_rho = rho_log * v_avg[dir];
  f[0] = f_rho;
  for (int d = 0; d < dim_; ++d) f[1 + d] = f_rho * v_avg[d];
  f[1 + dir] += p_avg;
  f[dim_ + 1] = f_rho * (0.5 * vl_vr + 1.0 / ((gamma_ - 1.0) * inv_rho_p_log)) +
                0.5 * (p_l * v_r[dir] + p_r * v_l[dir]);
}

void EulerPhysics::wave_speed_estimates(const double* ul, const double* ur, int dir, double& sl,
                                        double& sr) const {
  // Davis-type bounds from the outer states and the Roe average.
  const double rho_l = ul[0], rho_r = ur[0];
  const double vl = ul[1 + dir] / rho_l, vr = ur[1 + dir] / rho_r;
  const double cl = sound_speed(ul), cr = sound_speed(ur);

  const double sql = std::sqrt(rho_l), sqr = std::sqrt(rho_r);
  const double p_l = pressure(ul), p_r = pressure(ur);
  const double hl = (ul[dim_ + 1] + p_l) / rho_l;
  const double hr = (ur[dim_ + 1] + p_r) / rho_r;
  double v_roe2 = 0.0, v_roe_dir = 0.0;
  for (int d = 0; d < dim_; ++d) {
    const double vroe = (sql * ul[1 + d] / rho_l + sqr * ur[1 + d] / rho_r) / (sql + sqr);
    v_roe2 += vroe * vroe;
    if (d == dir) v_roe_dir = vroe;
  }
  const double h_roe = (sql * hl + sqr * hr) / (sql + sqr);
  const double c_roe = std::sqrt(std::max(0.0, (gamma_ - 1.0) * (h_roe - 0.5 * v_roe2)));

  sl = std::min(vl - cl, v_roe_dir - c_roe);
  sr = std::max(vr + cr, v_roe_dir + c_roe);
}

void EulerPhysics::hlle_flux(const double* ul, const double* ur, int dir, double* f) const {
  const int V = num_vars();
  double sl, sr;
  wave_speed_estimates(ul, ur, dir, sl, sr);
  std::vector<double> fl(V), fr(V);
  flux(ul, dir, fl.data());
  flux(ur, dir, fr.data());
  if (sl >= 0.0) {
    std::copy(fl.begin(), fl.end(), f);
  } else if (sr <= 0.0) {
    std::copy(fr.begin(), fr.end(), f);
  } else {
    for (int v = 0; v < V; ++v)
      f[v] = (sr * fl[v] - sl * fr[v] + sl * sr * (ur[v] - ul[v])) / (sr - sl);
  }
}

void EulerPhysics::hllc_flux(const double* ul, const double* ur, int dir, double* f) const {
  const int V = num_vars();
  double sl, sr;
  wave_speed_estimates(ul, ur, dir, sl, sr);
  std::vector<double> fk(V);
  if (sl >= 0.0) {
    flux(ul, dir, f);
    return;
  }
  if (sr <= 0.0) {
    flux(ur, dir, f);
    return;
  }

  const double rho_l = ul[0], rho_r = ur[0];
  const double vl = ul[1 + dir] / rho_l, vr = ur[1 + dir] / rho_r;
  const double p_l = pressure(ul), p_r = pressure(ur);
  const double s_star = (p_r - p_l + rho_l * vl * (sl - vl) - rho_r * vr * (sr - vr)) /
                        (rho_l * (sl - vl) - rho_r * (sr - vr));

  const bool left = s_star >= 0.0;
  const double* uk = left ? ul : ur;
  const double sk = left ? sl : sr;
  const double vk = left ? vl : vr;
  const double pk = left ? p_l : p_r;
  const double rho_k = uk[0];

  const double factor = rho_k * (sk - vk) / (sk - s_star);
  std::vector<double> ustar(V);
  ustar[0] = factor;
  for (int d = 0; d < dim_; ++d) ustar[1 + d] = factor * (d == dir ? s_star : uk[1 + d] / rho_k);
  ustar[dim_ + 1] =
      factor * (uk[dim_ + 1] / rho_k + (s_star - vk) * (s_star + pk / (rho_k * (sk - vk))));

  flux(uk, dir, fk.data());
  for (int v = 0; v < V; ++v) f[v] = fk[v] + sk * (ustar[v] - uk[v]);
}

void NSFPhysics::viscous_flux(const double* u, const double* grad, int, double* f) const {
  // grad holds d/dx of the conserved variables.
  const double rho = u[0];
  const double v = u[1] / rho;
  const double rho_x = grad[0], m_x = grad[1], e_x = grad[2];
  const double v_x = (m_x - v * rho_x) / rho;
  // T = (gamma-1)(E/rho - v^2/2)
  const double t_x = (gamma_ - 1.0) * (e_x / rho - u[2] * rho_x / (rho * rho) - v * v_x);
  const double tau = 4.0 / 3.0 * mu_ * v_x;
  const double q = -kappa() * t_x;
  f[0] = 0.0;
  f[1] = tau;
  f[2] = tau * v - q;
}

double viscous_shock_w(double chi) {
  const double chi2 = chi * chi;
  if (chi2 < 1e-4) {
    // 1 + (1 - sqrt(1+2x))/(2x) with x = chi^2: series 1/2 + x/4 - x^2/4 + ...
    return 0.5 + chi2 / 4.0 - chi2 * chi2 / 4.0;
  }
  return 1.0 + (1.0 - std::sqrt(1.0 + 2.0 * chi2)) / (2.0 * chi2);
}

std::array<double, 3> viscous_shock_exact(const ViscousShockParams& p, double x, double t) {
  const double x0 = x - p.v * t;
  const double chi = 2.0 * std::exp(x0 / (2.0 * p.l));
  const double w = viscous_shock_w(chi);
  const double rho = p.rho0 / w;
  const double vel = p.v * (1.0 - w);
  const double pres = p.p0 / w * (1.0 + (p.gamma - 1.0) / 2.0 * p.mach * p.mach * (1.0 - w * w));
  return {rho, vel, pres};
}

void viscous_shock_state(const ViscousShockParams& p, double x, double t, double* u) {
  const auto prim = viscous_shock_exact(p, x, t);
  u[0] = prim[0];
  u[1] = prim[0] * prim[1];
  u[2] = prim[2] / (p.gamma - 1.0) + 0.5 * prim[0] * prim[1] * prim[1];
}

void isentropic_vortex_state(const VortexParams& p, double x, double y, double t, double* u) {
  auto wrap = [&](double d) {
    const double span = 2.0 * p.half_width;
    d = std::fmod(d + p.half_width, span);
    if (d < 0.0) d += span;
    return d - p.half_width;
  };
  const double cx = wrap(x - p.v_inf[0] * t);
  const double cy = wrap(y - p.v_inf[1] * t);
  const double r2 = cx * cx + cy * cy;
  const double g = std::exp((1.0 - r2) / (2.0 * p.radius * p.radius));

  const double gm1 = p.gamma - 1.0;
  const double rho =
      p.rho_inf *
      std::pow(1.0 - p.intensity * p.intensity * p.mach * p.mach * gm1 * g * g / (8.0 * M_PI * M_PI),
               1.0 / gm1);
  // Azimuthal perturbation of the advecting base flow.
  const double coef = p.intensity * g / (2.0 * M_PI * p.radius);
  const double vx = p.v_inf[0] - coef * cy;
  const double vy = p.v_inf[1] + coef * cx;
  const double pres = std::pow(rho, p.gamma) / (p.gamma * p.mach * p.mach);

  u[0] = rho;
  u[1] = rho * vx;
  u[2] = rho * vy;
  u[3] = pres / gm1 + 0.5 * rho * (vx * vx + vy * vy);
}

void weak_blast_state(double gamma, double x, double* u) {
  const bool inner = std::abs(x) <= 0.5;
  const double rho = inner ? 1.1691 : 1.0;
  const double v = inner ? 0.1882 * (x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0)) : 0.0;
  const double p = inner ? 1.245 : 1.0;
  u[0] = rho;
  u[1] = rho * v;
  u[2] = p / (gamma - 1.0) + 0.5 * rho * v * v;
}

double gaussian_pulse(double x) { return std::exp(-x * x); }

std::vector<double> physical_flux(const Physics& physics, const std::vector<double>& u, int dir) {
  std::vector<double> f(physics.num_vars());
  physics.flux(u.data(), dir, f.data());
  return f;
}

std::pair<double, std::vector<double>> entropy_and_variables(const Physics& physics,
                                                             const std::vector<double>& u) {
  std::vector<double> w(physics.num_vars());
  physics.entropy_variables(u.data(), w.data());
  return {physics.entropy(u.data()), w};
}

std::vector<double> numerical_flux(FluxTag tag, const Physics& physics,
                                   const std::vector<double>& ul, const std::vector<double>& ur,
                                   int dir) {
  std::vector<double> f(physics.num_vars());
  physics.numerical_flux(tag, ul.data(), ur.data(), dir, f.data());
  return f;
}

}  // namespace perrk
