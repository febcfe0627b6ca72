#include "perrk/specopt.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace perrk {

double Spectrum::spectral_radius() const {
  double rho = 0.0;
  for (auto z : eigenvalues) rho = std::max(rho, std::abs(z));
  return rho;
}

Eigen::MatrixXd probe_jacobian(const Semidiscretization& semi, const StateVector& base, double t,
                               double epsilon) {
  const int M = semi.num_dofs();
  PERRK_REQUIRE(M <= 5000, "dense Jacobian probing guarded to M <= 5000");
  PERRK_REQUIRE(static_cast<int>(base.size()) == M, "state size mismatch");
  Eigen::MatrixXd J(M, M);
  StateVector u = base, fp(M), fm(M);
  for (int j = 0; j < M; ++j) {
    const double h = epsilon * (1.0 + std::abs(base[j]));
    u[j] = base[j] + h;
    semi.rhs(t, u, fp);
    u[j] = base[j] - h;
    semi.rhs(t, u, fm);
    u[j] = base[j];
    for (int i = 0; i < M; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

Spectrum eigenvalues_dense(const Eigen::MatrixXd& matrix) {
  PERRK_REQUIRE(matrix.rows() == matrix.cols(), "matrix must be square");
  PERRK_REQUIRE(matrix.allFinite(), "matrix entries must be finite");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, /*computeEigenvectors=*/false);
  PERRK_REQUIRE(solver.info() == Eigen::Success, "eigenvalue iteration did not converge");
  Spectrum spec;
  spec.eigenvalues.resize(matrix.rows());
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) spec.eigenvalues[i] = solver.eigenvalues()[i];
  return spec;
}

void clean_spectrum(Spectrum& spectrum, double relative_tol) {
  const double rho = spectrum.spectral_radius();
  for (auto& z : spectrum.eigenvalues) {
    if (z.real() > 0.0 && z.real() <= relative_tol * rho) z = {0.0, z.imag()};
    if (std::abs(z.imag()) <= 1e-14 * rho) z = {z.real(), 0.0};
  }
}

Spectrum probe_spectrum(const Semidiscretization& semi, const StateVector& base, double t) {
  Spectrum spec = eigenvalues_dense(probe_jacobian(semi, base, t));
  clean_spectrum(spec);
  return spec;
}

namespace {

constexpr double kFeasibilityTol = 1e-9;
constexpr int kHullSamples = 200;

std::vector<std::complex<double>> hull_boundary_samples(
    const std::vector<std::complex<double>>& points) {
  // Andrew's monotone chain over the eigenvalues plus the origin.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(points.size() + 1);
  for (auto z : points) pts.emplace_back(z.real(), z.imag());
  pts.emplace_back(0.0, 0.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  if (pts.size() == 1) return {std::complex<double>(pts[0].first, pts[0].second)};

  auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                  const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);

  // Sample the closed polygon boundary uniformly by arc length.
  double perimeter = 0.0;
  std::vector<double> seg(hull.size());
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    seg[i] = std::hypot(b.first - a.first, b.second - a.second);
    perimeter += seg[i];
  }
  std::vector<std::complex<double>> samples;
  if (perimeter == 0.0) {
    samples.emplace_back(hull[0].first, hull[0].second);
    return samples;
  }
  samples.reserve(kHullSamples);
  double target = 0.0;
  const double step = perimeter / kHullSamples;
  std::size_t i = 0;
  double walked = 0.0;
  for (int s = 0; s < kHullSamples; ++s, target += step) {
    while (walked + seg[i] < target && i + 1 < hull.size()) {
      walked += seg[i];
      ++i;
    }
    const double frac = seg[i] > 0.0 ? (target - walked) / seg[i] : 0.0;
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    samples.emplace_back(a.first + frac * (b.first - a.first),
                         a.second + frac * (b.second - a.second));
  }
  return samples;
}

struct InnerResult {
  bool feasible = false;
  double max_modulus = 0.0;
  std::vector<double> theta;
};

// Feasibility of a free-coefficient polynomial at one dt, solved by
// alternating projections: clip the sampled polynomial values onto the unit
// disk, then least-squares project back onto the affine set of polynomials
// with the fixed consistency part. Both sets are convex, so the iteration
// finds a point of a nonempty intersection. The sample set is the hull
// boundary plus every eigenvalue, so a feasible verdict holds on the actual
// spectrum, not just between hull samples.
InnerResult alpha_feasibility(const std::vector<std::complex<double>>& samples, double dt,
                              int degree, int order, const std::vector<double>& warm) {
  const int K = static_cast<int>(samples.size());
  const int n = std::max(0, degree - order);
  std::vector<std::complex<double>> base(K);
  std::vector<std::vector<std::complex<double>>> modes(static_cast<std::size_t>(n));
  for (auto& m : modes) m.resize(K);
  std::vector<double> scale(n, 1.0);
  for (int kk = 0; kk < K; ++kk) {
    const std::complex<double> z = dt * samples[kk];
    std::complex<double> pow = 1.0;
    double fact = 1.0;
    std::complex<double> acc = 0.0;
    for (int j = 0; j <= degree; ++j) {
      if (j > 0) {
        pow *= z;
        fact *= j;
      }
      if (j <= order)
        acc += pow / fact;
      else
        modes[j - order - 1][kk] = pow;
    }
    base[kk] = acc;
  }
  for (int j = 0; j < n; ++j) {
    double peak = 0.0;
    for (int kk = 0; kk < K; ++kk) peak = std::max(peak, std::abs(modes[j][kk]));
    scale[j] = peak > 0.0 ? peak : 1.0;
  }

  InnerResult res;
  if (n == 0) {
    for (int kk = 0; kk < K; ++kk) res.max_modulus = std::max(res.max_modulus, std::abs(base[kk]));
    res.feasible = res.max_modulus <= 1.0 + kFeasibilityTol;
    return res;
  }

  Eigen::MatrixXd A(2 * K, n);
  for (int kk = 0; kk < K; ++kk)
    for (int j = 0; j < n; ++j) {
      A(2 * kk, j) = modes[j][kk].real() / scale[j];
      A(2 * kk + 1, j) = modes[j][kk].imag() / scale[j];
    }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
  if (static_cast<int>(warm.size()) == n)
    for (int j = 0; j < n; ++j) theta(j) = warm[j] * scale[j];

  Eigen::VectorXd rhs(2 * K);
  std::vector<std::complex<double>> values(K);
  double best_max = 1e300;
  Eigen::VectorXd best = theta;
  for (int it = 0; it < 1500; ++it) {
    double maxmod = 0.0;
    for (int kk = 0; kk < K; ++kk) {
      std::complex<double> v = base[kk];
      for (int j = 0; j < n; ++j) v += (theta(j) / scale[j]) * modes[j][kk];
      values[kk] = v;
      maxmod = std::max(maxmod, std::abs(v));
    }
    if (maxmod < best_max) {
      best_max = maxmod;
      best = theta;
    }
    if (maxmod <= 1.0 + 0.5 * kFeasibilityTol) break;
    for (int kk = 0; kk < K; ++kk) {
      std::complex<double> target = values[kk];
      const double mod = std::abs(target);
      if (mod > 1.0) target /= mod;
      rhs(2 * kk) = target.real() - base[kk].real();
      rhs(2 * kk + 1) = target.imag() - base[kk].imag();
    }
    theta = qr.solve(rhs);
  }

  res.max_modulus = best_max;
  res.feasible = best_max <= 1.0 + kFeasibilityTol;
  res.theta.resize(n);
  for (int j = 0; j < n; ++j) res.theta[j] = best(j) / scale[j];
  return res;
}

std::vector<std::complex<double>> optimization_samples(const Spectrum& spectrum) {
  auto samples = hull_boundary_samples(spectrum.eigenvalues);
  samples.insert(samples.end(), spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());
  return samples;
}

StabilityPolynomial alpha_from_theta(int degree, int order, const std::vector<double>& theta) {
  // The solve works directly in the stability variable z = dt*lambda, so the
  // theta are the monomial coefficients of P(z).
  StabilityPolynomial poly;
  poly.degree = degree;
  poly.alpha.assign(degree + 1, 0.0);
  double fact = 1.0;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) fact *= j;
    poly.alpha[j] = 1.0 / fact;
  }
  for (int j = order + 1; j <= degree; ++j) poly.alpha[j] = theta[j - order - 1];
  return poly;
}

double evaluate_poly(const StabilityPolynomial& poly, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (int j = poly.degree; j >= 0; --j) acc = acc * z + poly.alpha[j];
  return std::abs(acc);
}

struct BisectionResult {
  double dt = 0.0;
  InnerResult inner;
};

template <typename Feasibility>
BisectionResult bisect_dt(const Spectrum& spectrum, Feasibility&& feasible_at) {
  const double rho = spectrum.spectral_radius();
  PERRK_REQUIRE(rho > 0.0, "empty or zero spectrum");

  double dt = 0.5 / rho;
  InnerResult inner = feasible_at(dt);
  if (inner.feasible) {
    // grow until infeasible
    InnerResult last = inner;
    double lo = dt, hi = dt;
    bool capped = false;
    for (int i = 0; i < 80 && !capped; ++i) {
      hi = 2.0 * hi;
      InnerResult trial = feasible_at(hi);
      capped = !trial.feasible;
      if (!capped) {
        lo = hi;
        last = trial;
      }
    }
    PERRK_REQUIRE(capped, "stability bound did not saturate");
    while ((hi - lo) / hi > 1e-4) {
      const double mid = 0.5 * (lo + hi);
      InnerResult trial = feasible_at(mid);
      if (trial.feasible) {
        lo = mid;
        last = trial;
      } else {
        hi = mid;
      }
    }
    return {lo, last};
  }
  // shrink until feasible
  double hi = dt;
  double lo = dt;
  InnerResult last;
  bool found = false;
  for (int i = 0; i < 60 && !found; ++i) {
    lo = 0.5 * lo;
    last = feasible_at(lo);
    found = last.feasible;
  }
  PERRK_REQUIRE(found,
                "infeasible even as dt -> 0: spectrum has eigenvalues with positive real part");
  while ((hi - lo) / hi > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    InnerResult trial = feasible_at(mid);
    if (trial.feasible) {
      lo = mid;
      last = trial;
    } else {
      hi = mid;
    }
  }
  return {lo, last};
}

}  // namespace

OptimizationResult optimize_stability_polynomial(const Spectrum& spectrum, int degree, int order) {
  PERRK_REQUIRE(!spectrum.eigenvalues.empty(), "empty spectrum");
  PERRK_REQUIRE(degree >= order && order >= 1, "need degree >= order >= 1");
  const auto samples = optimization_samples(spectrum);

  std::vector<double> warm;
  auto feasible_at = [&](double dt) {
    auto inner = alpha_feasibility(samples, dt, degree, order, warm);
    if (inner.feasible) warm = inner.theta;
    return inner;
  };
  const BisectionResult bis = bisect_dt(spectrum, feasible_at);

  OptimizationResult result;
  result.dt_max = bis.dt;
  result.alpha = alpha_from_theta(degree, order, bis.inner.theta);
  result.feasibility_margin = -1.0;
  for (auto lambda : spectrum.eigenvalues)
    result.feasibility_margin =
        std::max(result.feasibility_margin, evaluate_poly(result.alpha, bis.dt * lambda) - 1.0);
  return result;
}

StabilityPolynomial polynomial_from_tableau(const ButcherTableau& tableau) {
  // The member polynomial has degree equal to the active evaluation count.
  const int degree = static_cast<int>(active_stage_set(tableau).size());
  const int n = degree + 1;
  StabilityPolynomial poly;
  poly.degree = degree;
  poly.alpha.assign(n, 0.0);
  std::vector<std::complex<double>> values(n);
  for (int k = 0; k < n; ++k) {
    const std::complex<double> z = std::polar(1.0, 2.0 * M_PI * k / n);
    values[k] = stability_function(tableau, z);
  }
  for (int j = 0; j < n; ++j) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += values[k] * std::polar(1.0, -2.0 * M_PI * j * k / n);
    poly.alpha[j] = (acc / static_cast<double>(n)).real();
  }
  return poly;
}

namespace {

// Newton / Gauss-Newton fit of free subdiagonals to target monomials.
std::vector<double> fit_subdiagonals(FamilyKind kind, int S, int E,
                                     const StabilityPolynomial& alpha, double c_Sminus3) {
  const int n_free = free_coefficient_count(kind, E);
  const int p = family_order(kind);
  PERRK_REQUIRE(alpha.degree == E, "polynomial degree must equal E");
  std::vector<double> target(alpha.alpha.begin() + p + 1, alpha.alpha.end());
  const int n_eq = static_cast<int>(target.size());
  if (n_free == 0) {
    // Fully determined member: verify the targets are the realized ones.
    const auto poly = polynomial_from_tableau(build_member(kind, S, E, {}, {}, c_Sminus3, false));
    for (int j = 0; j < n_eq; ++j)
      PERRK_REQUIRE(std::abs(poly.alpha[p + 1 + j] - target[j]) <= 1e-9,
                    "archetype cannot realize the polynomial");
    return {};
  }

  auto realized = [&](const std::vector<double>& theta) {
    const auto poly =
        polynomial_from_tableau(build_member(kind, S, E, theta, {}, c_Sminus3, false));
    std::vector<double> r(n_eq);
    for (int j = 0; j < n_eq; ++j) r[j] = poly.alpha[p + 1 + j] - target[j];
    return r;
  };

  std::vector<double> theta(n_free, 0.2);
  // scale starting guess roughly with factorial decay
  for (int j = 0; j < n_free; ++j) theta[j] = 0.3 / (1.0 + j);

  double best_norm = 1e300;
  std::vector<double> best = theta;
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (attempt > 0)
      for (int j = 0; j < n_free; ++j) theta[j] = 0.05 + 0.3 * attempt / (1.0 + j);
    for (int it = 0; it < 80; ++it) {
      const auto r = realized(theta);
      double norm = 0.0;
      for (double v : r) norm = std::max(norm, std::abs(v));
      if (norm < best_norm) {
        best_norm = norm;
        best = theta;
      }
      if (norm <= 1e-13) break;
      Eigen::MatrixXd J(n_eq, n_free);
      for (int j = 0; j < n_free; ++j) {
        const double h = 1e-7 * (1.0 + std::abs(theta[j]));
        auto tp = theta, tm = theta;
        tp[j] += h;
        tm[j] -= h;
        const auto rp = realized(tp), rm = realized(tm);
        for (int i = 0; i < n_eq; ++i) J(i, j) = (rp[i] - rm[i]) / (2.0 * h);
      }
      Eigen::VectorXd rv(n_eq);
      for (int i = 0; i < n_eq; ++i) rv(i) = r[i];
      const Eigen::VectorXd step = J.colPivHouseholderQr().solve(rv);
      double damp = 1.0;
      for (int j = 0; j < n_free; ++j) theta[j] -= damp * step(j);
      if (!std::all_of(theta.begin(), theta.end(),
                       [](double v) { return std::isfinite(v); }))
        break;
    }
    if (best_norm <= 1e-13) break;
  }
  PERRK_REQUIRE(best_norm <= 1e-9, "archetype cannot realize the polynomial");
  return best;
}

}  // namespace

std::vector<double> solve_free_coefficients(FamilyKind kind, int S, int E,
                                            const StabilityPolynomial& alpha, double c_Sminus3) {
  const int p = family_order(kind);
  PERRK_REQUIRE(alpha.degree == E, "polynomial degree must equal E");
  PERRK_REQUIRE(static_cast<int>(alpha.alpha.size()) == E + 1, "coefficient count mismatch");
  double fact = 1.0;
  for (int j = 0; j <= p; ++j) {
    if (j > 0) fact *= j;
    PERRK_REQUIRE(std::abs(alpha.alpha[j] - 1.0 / fact) <= 1e-10,
                  "polynomial not consistent to the archetype order");
  }

  if (kind == FamilyKind::p2) {
    // alpha_j = c_{S-j+1} * prod_{m=S-j+2}^{S-1} a_m (0-based), solved from
    // the highest monomial down.
    const auto c = default_abscissae(kind, S);
    std::vector<double> a(std::max(0, E - 2), 0.0);  // rows S-E+2 .. S-1 (0-based)
    if (E == 2) return {};
    std::vector<double> q(E + 1, 0.0);  // q[j] = prod_{m=S-j+2}^{S-1} a_m
    for (int j = 3; j <= E; ++j) {
      PERRK_REQUIRE(c[S - j + 1] != 0.0, "zero pivot (abscissa) in back-substitution");
      q[j] = alpha.alpha[j] / c[S - j + 1];
    }
    // a at row S-j+2 = q_j / q_{j-1}, with q_2 = 1.
    q[2] = 1.0;
    for (int j = 3; j <= E; ++j) {
      PERRK_REQUIRE(q[j - 1] != 0.0, "zero pivot in back-substitution");
      a[(S - j + 2) - (S - E + 2)] = q[j] / q[j - 1];
    }
    return a;
  }
  return fit_subdiagonals(kind, S, E, alpha, c_Sminus3);
}

namespace {

// Direct optimization over the free subdiagonals (p3/p4): damped Gauss-Newton
// with Lawson weights on the hull samples.
InnerResult subdiagonal_feasibility(FamilyKind kind, int S, int E, double c_Sminus3,
                                    const std::vector<std::complex<double>>& hull, double dt,
                                    std::vector<double> theta0) {
  const int n_free = free_coefficient_count(kind, E);
  const int K = static_cast<int>(hull.size());
  InnerResult res;

  auto evaluate = [&](const std::vector<double>& theta, std::vector<std::complex<double>>& vals) {
    const ButcherTableau t = build_member(kind, S, E, theta, {}, c_Sminus3, false);
    vals.resize(K);
    for (int kk = 0; kk < K; ++kk) vals[kk] = stability_function(t, dt * hull[kk]);
  };

  if (n_free == 0) {
    std::vector<std::complex<double>> vals;
    evaluate({}, vals);
    for (auto v : vals) res.max_modulus = std::max(res.max_modulus, std::abs(v));
    res.feasible = res.max_modulus <= 1.0 + kFeasibilityTol;
    return res;
  }

  std::vector<double> theta =
      theta0.size() == static_cast<std::size_t>(n_free) ? theta0 : std::vector<double>(n_free, 0.2);
  std::vector<std::complex<double>> vals, vp, vm;
  Eigen::MatrixXd J(2 * K, n_free);
  Eigen::VectorXd rhs(2 * K);

  // Gauss-Newton onto unit-disk-clipped targets.
  double best = 1e300;
  std::vector<double> best_theta = theta;
  for (int it = 0; it < 200; ++it) {
    evaluate(theta, vals);
    double maxmod = 0.0;
    for (auto v : vals) maxmod = std::max(maxmod, std::abs(v));
    if (maxmod < best) {
      best = maxmod;
      best_theta = theta;
    }
    if (maxmod <= 1.0 + 0.5 * kFeasibilityTol) break;

    for (int j = 0; j < n_free; ++j) {
      const double h = 1e-6 * (1.0 + std::abs(theta[j]));
      auto tp = theta, tm = theta;
      tp[j] += h;
      tm[j] -= h;
      evaluate(tp, vp);
      evaluate(tm, vm);
      for (int kk = 0; kk < K; ++kk) {
        const std::complex<double> dv = (vp[kk] - vm[kk]) / (2.0 * h);
        J(2 * kk, j) = dv.real();
        J(2 * kk + 1, j) = dv.imag();
      }
    }
    for (int kk = 0; kk < K; ++kk) {
      std::complex<double> target = vals[kk];
      const double mod = std::abs(target);
      if (mod > 1.0) target /= mod;
      rhs(2 * kk) = target.real() - vals[kk].real();
      rhs(2 * kk + 1) = target.imag() - vals[kk].imag();
    }
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(rhs);
    const double damp = 0.8;
    bool ok = true;
    for (int j = 0; j < n_free; ++j) {
      theta[j] += damp * step(j);
      ok = ok && std::isfinite(theta[j]);
    }
    if (!ok) {
      theta = best_theta;
      break;
    }
  }

  res.theta = best_theta;
  res.max_modulus = best;
  res.feasible = best <= 1.0 + kFeasibilityTol;
  return res;
}

}  // namespace

FamilyOptimization optimize_family(FamilyKind kind, const std::vector<int>& E_list,
                                   const Spectrum& spectrum, double c_Sminus3) {
  PERRK_REQUIRE(!E_list.empty(), "empty member list");
  const int S = E_list.back();
  const int p = family_order(kind);
  const auto hull = optimization_samples(spectrum);

  FamilyOptimization out;
  std::vector<std::vector<double>> free_lists;
  for (int E : E_list) {
    OptimizationResult member_result;
    std::vector<double> free_list;
    if (kind == FamilyKind::p2) {
      member_result = optimize_stability_polynomial(spectrum, E, p);
      free_list = solve_free_coefficients(kind, S, E, member_result.alpha);
    } else {
      std::vector<double> warm;
      auto feasible_at = [&](double dt) {
        auto inner = subdiagonal_feasibility(kind, S, E, c_Sminus3, hull, dt, warm);
        if (inner.feasible) warm = inner.theta;
        return inner;
      };
      const BisectionResult bis = bisect_dt(spectrum, feasible_at);
      free_list = bis.inner.theta;
      member_result.dt_max = bis.dt;
      member_result.alpha =
          polynomial_from_tableau(build_member(kind, S, E, free_list, {}, c_Sminus3, false));
      member_result.feasibility_margin = -1.0;
      for (auto lambda : spectrum.eigenvalues)
        member_result.feasibility_margin =
            std::max(member_result.feasibility_margin,
                     evaluate_poly(member_result.alpha, bis.dt * lambda) - 1.0);
    }
    out.members.push_back(std::move(member_result));
    free_lists.push_back(std::move(free_list));
  }

  out.family = build_family(kind, S, E_list, free_lists, c_Sminus3);
  for (const auto& m : out.members) out.family.dt_max.push_back(m.dt_max);
  return out;
}

std::string spectrum_to_text(const Spectrum& spectrum) {
  std::ostringstream os;
  os << "# spectrum: " << spectrum.eigenvalues.size() << " eigenvalues, re im per line\n";
  char buf[96];
  for (auto z : spectrum.eigenvalues) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", z.real(), z.imag());
    os << buf;
  }
  return os.str();
}

Spectrum spectrum_from_text(const std::string& text) {
  Spectrum spec;
  spec.source = Spectrum::Source::file;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto pos = line.find('#');
    if (pos != std::string::npos) line = line.substr(0, pos);
    std::istringstream ls(line);
    double re, im;
    if (ls >> re >> im) spec.eigenvalues.emplace_back(re, im);
  }
  PERRK_REQUIRE(!spec.eigenvalues.empty(), "no eigenvalues in spectrum file");
  return spec;
}

void save_spectrum(const Spectrum& spectrum, const std::string& path) {
  std::ofstream os(path);
  PERRK_REQUIRE(os.good(), "cannot open " + path);
  os << spectrum_to_text(spectrum);
}

Spectrum load_spectrum(const std::string& path) {
  std::ifstream is(path);
  PERRK_REQUIRE(is.good(), "cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return spectrum_from_text(buf.str());
}

}  // namespace perrk
