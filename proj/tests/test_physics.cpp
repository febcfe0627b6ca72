#include "perrk/physics.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace perrk;

namespace {

std::vector<double> euler1d_state(double rho, double v, double p, double gamma) {
  return {rho, rho * v, p / (gamma - 1.0) + 0.5 * rho * v * v};
}

std::vector<double> euler2d_state(double rho, double vx, double vy, double p, double gamma) {
  return {rho, rho * vx, rho * vy, p / (gamma - 1.0) + 0.5 * rho * (vx * vx + vy * vy)};
}

// Entropy flux potential Psi = <w, f(u)> - psi(u). The Tadmor jump identity
// for an entropy-conservative flux is <w_R - w_L, f*> = Psi_R - Psi_L.
double flux_potential(const Physics& phys, const std::vector<double>& u, int dir) {
  const auto f = physical_flux(phys, u, dir);
  const auto w = entropy_and_variables(phys, u).second;
  double wf = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) wf += w[v] * f[v];
  return wf - phys.entropy_flux(u.data(), dir);
}

double tadmor_residual(const Physics& phys, FluxTag tag, const std::vector<double>& ul,
                       const std::vector<double>& ur, int dir) {
  const auto f = numerical_flux(tag, phys, ul, ur, dir);
  const auto wl = entropy_and_variables(phys, ul).second;
  const auto wr = entropy_and_variables(phys, ur).second;
  double jump = 0.0;
  for (std::size_t v = 0; v < f.size(); ++v) jump += (wr[v] - wl[v]) * f[v];
  return jump - (flux_potential(phys, ur, dir) - flux_potential(phys, ul, dir));
}

}  // namespace

TEST_CASE("logarithmic mean") {
  CHECK(logmean(3.7, 3.7) == 3.7);
  CHECK(logmean(1.0, std::exp(1.0)) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = dist(rng), b = dist(rng);
    const double lm = logmean(a, b);
    CHECK(lm >= std::min(a, b) - 1e-15);
    CHECK(lm <= std::max(a, b) + 1e-15);
  }
  // series branch continuity (difference taken on the rounded argument)
  const double a = 2.0;
  for (double eps : {1e-3, 1e-5, 1e-7, 1e-9}) {
    const double b = a + eps;
    const double d = b - a;
    const double exact = d / std::log1p(d / a);
    CHECK(logmean(b, a) == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("physical fluxes") {
  AdvectionPhysics adv({2.0});
  CHECK(physical_flux(adv, {3.0}, 0)[0] == 6.0);

  EulerPhysics euler(1, 1.4);
  const auto rest = euler1d_state(1.0, 0.0, 1.0, 1.4);
  const auto f = physical_flux(euler, rest, 0);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(1.0));
  CHECK(f[2] == 0.0);

  // weak blast inner state: momentum flux rho v^2 + p
  const auto blast = euler1d_state(1.1691, 0.1882, 1.245, 1.4);
  const auto fb = physical_flux(euler, blast, 0);
  CHECK(fb[1] == doctest::Approx(1.1691 * 0.1882 * 0.1882 + 1.245).epsilon(1e-14));
}

TEST_CASE("entropy and entropy variables") {
  AdvectionPhysics adv({1.0});
  const auto [s, w] = entropy_and_variables(adv, {3.0});
  CHECK(s == 9.0);
  CHECK(w[0] == 6.0);

  EulerPhysics euler(1, 1.4);
  CHECK(entropy_and_variables(euler, euler1d_state(1.0, 0.0, 1.0, 1.4)).first ==
        doctest::Approx(0.0));

  // w is the exact gradient of s: central finite differences
  for (const auto& state :
       {euler1d_state(1.2, 0.3, 0.9, 1.4), euler1d_state(0.7, -1.1, 2.3, 1.4)}) {
    const auto [s0, w0] = entropy_and_variables(euler, state);
    (void)s0;
    for (std::size_t v = 0; v < state.size(); ++v) {
      auto up = state, um = state;
      const double h = 1e-6 * (1.0 + std::abs(state[v]));
      up[v] += h;
      um[v] -= h;
      const double fd =
          (euler.entropy(up.data()) - euler.entropy(um.data())) / (2.0 * h);
      CHECK(w0[v] == doctest::Approx(fd).epsilon(1e-6));
    }
  }

  EulerPhysics euler2(2, 1.4);
  const auto st2 = euler2d_state(1.3, 0.4, -0.6, 1.7, 1.4);
  const auto [s2, w2] = entropy_and_variables(euler2, st2);
  (void)s2;
  for (std::size_t v = 0; v < st2.size(); ++v) {
    auto up = st2, um = st2;
    const double h = 1e-6;
    up[v] += h;
    um[v] -= h;
    CHECK(w2[v] == doctest::Approx((euler2.entropy(up.data()) - euler2.entropy(um.data())) /
                                   (2.0 * h))
                       .epsilon(1e-6));
  }
}

TEST_CASE("numerical flux consistency and symmetry") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rho(0.4, 2.4), vel(-1.2, 1.2), pres(0.4, 2.4);

  EulerPhysics euler(1, 1.4);
  for (FluxTag tag : {FluxTag::central, FluxTag::rusanov, FluxTag::hlle, FluxTag::hllc,
                      FluxTag::ec}) {
    for (int i = 0; i < 200; ++i) {
      const auto u = euler1d_state(rho(rng), vel(rng), pres(rng), 1.4);
      const auto fu = physical_flux(euler, u, 0);
      const auto fn = numerical_flux(tag, euler, u, u, 0);
      for (std::size_t v = 0; v < fu.size(); ++v)
        CHECK(fn[v] == doctest::Approx(fu[v]).epsilon(1e-14));
    }
  }
  // symmetry of central and EC
  for (FluxTag tag : {FluxTag::central, FluxTag::ec}) {
    for (int i = 0; i < 200; ++i) {
      const auto ul = euler1d_state(rho(rng), vel(rng), pres(rng), 1.4);
      const auto ur = euler1d_state(rho(rng), vel(rng), pres(rng), 1.4);
      const auto fl = numerical_flux(tag, euler, ul, ur, 0);
      const auto fr = numerical_flux(tag, euler, ur, ul, 0);
      for (std::size_t v = 0; v < fl.size(); ++v)
        CHECK(fl[v] == doctest::Approx(fr[v]).epsilon(1e-13));
    }
  }

  AdvectionPhysics adv({1.5});
  // Rusanov equals upwind for positive advection speed
  for (double ul = -2.0; ul <= 2.0; ul += 0.5)
    for (double ur = -2.0; ur <= 2.0; ur += 0.5)
      CHECK(numerical_flux(FluxTag::rusanov, adv, {ul}, {ur}, 0)[0] ==
            doctest::Approx(numerical_flux(FluxTag::upwind, adv, {ul}, {ur}, 0)[0]));

  CHECK_THROWS(numerical_flux(FluxTag::hllc, euler, euler1d_state(-1.0, 0, 1, 1.4),
                              euler1d_state(1.0, 0, 1, 1.4), 0));
}

TEST_CASE("EC flux satisfies the Tadmor condition") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> rho(0.3, 3.0), vel(-1.5, 1.5), pres(0.3, 3.0);

  EulerPhysics euler(1, 1.4);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto ul = euler1d_state(rho(rng), vel(rng), pres(rng), 1.4);
    const auto ur = euler1d_state(rho(rng), vel(rng), pres(rng), 1.4);
    worst = std::max(worst, std::abs(tadmor_residual(euler, FluxTag::ec, ul, ur, 0)));
  }
  CHECK(worst < 1e-11);

  EulerPhysics euler2(2, 1.4);
  worst = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const auto ul = euler2d_state(rho(rng), vel(rng), vel(rng), pres(rng), 1.4);
    const auto ur = euler2d_state(rho(rng), vel(rng), vel(rng), pres(rng), 1.4);
    for (int dir = 0; dir < 2; ++dir)
      worst = std::max(worst, std::abs(tadmor_residual(euler2, FluxTag::ec, ul, ur, dir)));
  }
  CHECK(worst < 1e-11);

  // advection: central flux is entropy conservative for s = u^2
  AdvectionPhysics adv({1.0});
  for (double ul = -1.0; ul <= 1.0; ul += 0.25)
    for (double ur = -1.0; ur <= 1.0; ur += 0.25)
      CHECK(std::abs(tadmor_residual(adv, FluxTag::ec, {ul}, {ur}, 0)) < 1e-14);
}

TEST_CASE("dissipative fluxes produce entropy") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> rho(0.5, 2.0), vel(-1.0, 1.0), pres(0.5, 2.0);
  EulerPhysics euler(1, 1.4);
  for (FluxTag tag : {FluxTag::rusanov, FluxTag::hlle, FluxTag::hllc}) {
    for (int i = 0; i < 3000; ++i) {
      const auto ul = euler1d_state(rho(rng), vel(rng), pres(rng), 1.4);
      const auto ur = euler1d_state(rho(rng), vel(rng), pres(rng), 1.4);
      CHECK(tadmor_residual(euler, tag, ul, ur, 0) <= 1e-12);
    }
  }
  AdvectionPhysics adv({1.0});
  std::uniform_real_distribution<double> uu(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i)
    CHECK(tadmor_residual(adv, FluxTag::upwind, {uu(rng)}, {uu(rng)}, 0) <= 1e-14);
}

TEST_CASE("initial conditions") {
  // weak blast at the origin
  double u[3];
  weak_blast_state(1.4, 0.0, u);
  CHECK(u[0] == doctest::Approx(1.1691));
  CHECK(u[1] == 0.0);
  EulerPhysics euler(1, 1.4);
  CHECK(euler.pressure(u) == doctest::Approx(1.245));
  weak_blast_state(1.4, 0.3, u);
  CHECK(u[1] == doctest::Approx(1.1691 * 0.1882));
  weak_blast_state(1.4, 1.7, u);
  CHECK(u[0] == 1.0);

  // vortex far field
  VortexParams vp;
  vp.half_width = 1e9;  // disable wrapping for the far-field check
  double q[4];
  isentropic_vortex_state(vp, 4e8, 4e8, 0.0, q);
  CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q[1] / q[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(q[2] / q[0] == doctest::Approx(1.0).epsilon(1e-12));
  EulerPhysics euler2(2, 1.4);
  CHECK(euler2.pressure(q) == doctest::Approx(1.0 / (1.4 * 0.16)).epsilon(1e-12));

  CHECK(gaussian_pulse(0.0) == 1.0);
  CHECK(gaussian_pulse(2.0) == doctest::Approx(std::exp(-4.0)));
}

TEST_CASE("viscous shock solution") {
  ViscousShockParams params;
  CHECK(params.mach == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(params.p0 == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(params.l == doctest::Approx(0.25).epsilon(1e-12));

  // w limits: far ahead of the shock the gas is undisturbed
  CHECK(viscous_shock_w(1e8) == doctest::Approx(1.0).epsilon(1e-7));
  // chi -> 0 is the compressed plateau; series value locked as regression
  CHECK(viscous_shock_w(1e-9) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(viscous_shock_w(1e-3) == doctest::Approx(0.5 + 2.5e-7).epsilon(1e-6));
  // series/exact branch agreement
  for (double chi : {9e-3, 1.1e-2, 2e-2}) {
    const double exact = 1.0 + (1.0 - std::sqrt(1.0 + 2.0 * chi * chi)) / (2.0 * chi * chi);
    CHECK(viscous_shock_w(chi) == doctest::Approx(exact).epsilon(1e-12));
  }

  const auto far = viscous_shock_exact(params, 30.0, 0.0);
  CHECK(far[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(far[1] == doctest::Approx(0.0).epsilon(1e-10));

  // traveling wave: u(x, t) = u(x - v dt, t - dt)
  for (double x : {-1.0, -0.2, 0.4, 1.5}) {
    const auto a = viscous_shock_exact(params, x, 0.37);
    const auto b = viscous_shock_exact(params, x - params.v * 0.37, 0.0);
    for (int c = 0; c < 3; ++c) CHECK(a[c] == doctest::Approx(b[c]).epsilon(1e-14));
  }
}

TEST_CASE("becker profile solves the steady NSF relations") {
  // Substituting the profile into mass / momentum / energy fluxes in the
  // shock frame must give constants; this pins the length scale l.
  ViscousShockParams p;
  NSFPhysics nsf(p.gamma, p.mu, 0.75);
  auto fluxes = [&](double x) {
    const auto [rho, u, pres] = viscous_shock_exact(p, x, 0.0);
    const double usf = u - p.v;  // shock frame velocity
    // du/dx by central differences of the exact profile
    const double h = 1e-6;
    const auto up = viscous_shock_exact(p, x + h, 0.0);
    const auto um = viscous_shock_exact(p, x - h, 0.0);
    const double ux = (up[1] - um[1]) / (2.0 * h);
    const double Tx = (up[2] / up[0] - um[2] / um[0]) / (2.0 * h);
    const double tau = 4.0 / 3.0 * p.mu * ux;
    const double q = -nsf.kappa() * Tx;
    const double mass = rho * usf;
    const double mom = rho * usf * usf + pres - tau;
    const double T = pres / rho;
    const double etot = pres / (p.gamma - 1.0) + 0.5 * rho * usf * usf;
    const double en = usf * (etot + pres) - tau * usf + q;
    (void)T;
    return std::array<double, 3>{mass, mom, en};
  };
  const auto ref = fluxes(3.0);  // essentially undisturbed
  for (double x : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
    const auto f = fluxes(x);
    CHECK(f[0] == doctest::Approx(ref[0]).epsilon(1e-7));
    CHECK(f[1] == doctest::Approx(ref[1]).epsilon(1e-6));
    CHECK(f[2] == doctest::Approx(ref[2]).epsilon(1e-6));
  }
}

TEST_CASE("nsf viscous flux") {
  NSFPhysics nsf(5.0 / 3.0, 0.15, 0.75);
  CHECK(nsf.kappa() == doctest::Approx(5.0 / 3.0 / (2.0 / 3.0) * 0.15 / 0.75));
  const auto u = euler1d_state(1.2, 0.4, 0.9, 5.0 / 3.0);
  double grad[3] = {0.0, 0.0, 0.0};
  double f[3];
  nsf.viscous_flux(u.data(), grad, 0, f);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == 0.0);
  CHECK(f[2] == 0.0);

  NSFPhysics inviscid(5.0 / 3.0, 0.0, 0.75);
  double grad2[3] = {0.3, -0.2, 0.7};
  inviscid.viscous_flux(u.data(), grad2, 0, f);
  CHECK(f[1] == 0.0);
  CHECK(f[2] == 0.0);
}
