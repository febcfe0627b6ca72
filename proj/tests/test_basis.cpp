#include "perrk/basis.hpp"

#include <cmath>

#include "doctest.h"

using namespace perrk;

TEST_CASE("low-order GLL nodes and weights") {
  const auto b1 = gll_basis(1);
  CHECK(b1.nodes[0] == -1.0);
  CHECK(b1.nodes[1] == 1.0);
  CHECK(b1.weights[0] == doctest::Approx(1.0));
  CHECK(b1.weights[1] == doctest::Approx(1.0));

  const auto b2 = gll_basis(2);
  CHECK(b2.nodes[1] == 0.0);
  CHECK(b2.weights[0] == doctest::Approx(1.0 / 3.0));
  CHECK(b2.weights[1] == doctest::Approx(4.0 / 3.0));

  const auto b3 = gll_basis(3);
  CHECK(b3.nodes[1] == doctest::Approx(-1.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(b3.nodes[2] == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(b3.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(b3.weights[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("SBP property and exactness across degrees") {
  for (int k = 1; k <= 8; ++k) {
    const auto basis = gll_basis(k);
    const int n = k + 1;

    double wsum = 0.0;
    for (double w : basis.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 0; i < n; ++i)
      CHECK(basis.nodes[i] == doctest::Approx(-basis.nodes[n - 1 - i]).epsilon(1e-14));

    // M D + D^T M = B
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double lhs = basis.weights[i] * basis.d(i, j) + basis.weights[j] * basis.d(j, i);
        double expect = 0.0;
        if (i == 0 && j == 0) expect = -1.0;
        if (i == n - 1 && j == n - 1) expect = 1.0;
        CHECK(std::abs(lhs - expect) < 1e-13);
      }

    // D annihilates constants
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += basis.d(i, j);
      CHECK(std::abs(row) < 2e-13);
    }

    // quadrature exact to degree 2k-1: integrate x^(2k-1) (odd, zero) and x^(2k-2)
    double integral = 0.0;
    for (int i = 0; i < n; ++i) integral += basis.weights[i] * std::pow(basis.nodes[i], 2 * k - 2);
    CHECK(integral == doctest::Approx(2.0 / (2 * k - 1)).epsilon(1e-12));

    // D differentiates polynomials of degree k exactly
    for (int i = 0; i < n; ++i) {
      double der = 0.0;
      for (int j = 0; j < n; ++j) der += basis.d(i, j) * std::pow(basis.nodes[j], k);
      CHECK(der == doctest::Approx(k * std::pow(basis.nodes[i], k - 1)).epsilon(1e-11));
    }
  }
}

TEST_CASE("interpolation matrix reproduces polynomials") {
  const auto basis = gll_basis(4);
  const auto fine = gll_basis(8);
  const auto L = interpolation_matrix(basis.nodes, fine.nodes);
  for (int q = 0; q < fine.n(); ++q) {
    double val = 0.0;
    for (int j = 0; j < basis.n(); ++j)
      val += L[static_cast<std::size_t>(q) * basis.n() + j] * std::pow(basis.nodes[j], 4);
    CHECK(val == doctest::Approx(std::pow(fine.nodes[q], 4)).epsilon(1e-12));
  }
  // exact node hit
  const auto Lid = interpolation_matrix(basis.nodes, basis.nodes);
  for (int i = 0; i < basis.n(); ++i)
    for (int j = 0; j < basis.n(); ++j)
      CHECK(Lid[static_cast<std::size_t>(i) * basis.n() + j] == (i == j ? 1.0 : 0.0));
}
