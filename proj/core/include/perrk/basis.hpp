#ifndef PERRK_BASIS_HPP
#define PERRK_BASIS_HPP

#include <vector>

#include "perrk/common.hpp"

namespace perrk {

/// Gauss-Lobatto-Legendre collocation basis on [-1, 1].
/// M = diag(weights) and D satisfy the SBP property M D + D^T M = B with
/// B = diag(-1, 0, ..., 0, 1).
struct GLLBasis {
  int k = 0;                    // polynomial degree
  std::vector<double> nodes;    // k+1 nodes, ascending
  std::vector<double> weights;  // quadrature weights, sum 2
  std::vector<double> D;        // (k+1)^2 differentiation matrix, row-major

  int n() const { return k + 1; }
  double d(int i, int j) const { return D[static_cast<std::size_t>(i) * n() + j]; }
};

GLLBasis gll_basis(int k);

/// Lagrange interpolation matrix from the basis nodes to arbitrary targets;
/// row i holds the cardinal polynomials evaluated at targets[i].
std::vector<double> interpolation_matrix(const std::vector<double>& source_nodes,
                                         const std::vector<double>& targets);

double legendre(int k, double x);

}  // namespace perrk

#endif
