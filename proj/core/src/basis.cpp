#include "perrk/basis.hpp"

#include <cmath>

namespace perrk {

namespace {

// P_k(x) and P_k'(x) by the three-term recurrence.
void legendre_and_derivative(int k, double x, double& p, double& dp) {
  double pm1 = 1.0, pm0 = x;
  if (k == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int n = 1; n < k; ++n) {
    const double pn = ((2.0 * n + 1.0) * x * pm0 - n * pm1) / (n + 1.0);
    pm1 = pm0;
    pm0 = pn;
  }
  p = pm0;
  dp = k * (pm1 - x * pm0) / (1.0 - x * x);
}

}  // namespace

double legendre(int k, double x) {
  double p, dp;
  if (std::abs(x) == 1.0) return (x > 0 || k % 2 == 0) ? 1.0 : -1.0;
  legendre_and_derivative(k, x, p, dp);
  return p;
}

GLLBasis gll_basis(int k) {
  PERRK_REQUIRE(k >= 1, "GLL basis needs degree >= 1");
  GLLBasis basis;
  basis.k = k;
  const int n = k + 1;
  basis.nodes.assign(n, 0.0);
  basis.nodes[0] = -1.0;
  basis.nodes[k] = 1.0;

  // Interior nodes: roots of P_k', Newton from Chebyshev-Gauss-Lobatto guesses.
  for (int i = 1; i < k; ++i) {
    double x = -std::cos(M_PI * i / k);
    for (int iter = 0; iter < 100; ++iter) {
      double p, dp;
      legendre_and_derivative(k, x, p, dp);
      // d/dx P_k' from the Legendre ODE: (1-x^2) P_k'' = 2x P_k' - k(k+1) P_k.
      const double ddp = (2.0 * x * dp - k * (k + 1.0) * p) / (1.0 - x * x);
      const double step = dp / ddp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    basis.nodes[i] = x;
  }
  // Enforce exact symmetry about the origin.
  for (int i = 0; i < n / 2; ++i) {
    const double v = 0.5 * (basis.nodes[n - 1 - i] - basis.nodes[i]);
    basis.nodes[i] = -v;
    basis.nodes[n - 1 - i] = v;
  }
  if (n % 2 == 1) basis.nodes[n / 2] = 0.0;

  basis.weights.assign(n, 0.0);
  std::vector<double> pk(n);
  for (int i = 0; i < n; ++i) {
    pk[i] = legendre(k, basis.nodes[i]);
    basis.weights[i] = 2.0 / (k * (k + 1.0) * pk[i] * pk[i]);
  }

  basis.D.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      basis.D[static_cast<std::size_t>(i) * n + j] =
          pk[i] / (pk[j] * (basis.nodes[i] - basis.nodes[j]));
    }
  basis.D[0] = -k * (k + 1.0) / 4.0;
  basis.D[static_cast<std::size_t>(n) * n - 1] = k * (k + 1.0) / 4.0;

  return basis;
}

std::vector<double> interpolation_matrix(const std::vector<double>& x,
                                         const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(y.size());
  std::vector<double> w(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (l != j) w[j] /= (x[j] - x[l]);

  std::vector<double> L(static_cast<std::size_t>(m) * n, 0.0);
  for (int i = 0; i < m; ++i) {
    int exact = -1;
    for (int j = 0; j < n; ++j)
      if (y[i] == x[j]) exact = j;
    if (exact >= 0) {
      L[static_cast<std::size_t>(i) * n + exact] = 1.0;
      continue;
    }
    double denom = 0.0;
    for (int j = 0; j < n; ++j) denom += w[j] / (y[i] - x[j]);
    for (int j = 0; j < n; ++j)
      L[static_cast<std::size_t>(i) * n + j] = (w[j] / (y[i] - x[j])) / denom;
  }
  return L;
}

}  // namespace perrk
