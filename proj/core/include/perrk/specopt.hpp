#ifndef PERRK_SPECOPT_HPP
#define PERRK_SPECOPT_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "perrk/butcher.hpp"
#include "perrk/common.hpp"
#include "perrk/semidisc.hpp"

namespace perrk {

struct Spectrum {
  enum class Source { probe, file };
  std::vector<std::complex<double>> eigenvalues;
  Source source = Source::probe;

  double spectral_radius() const;
};

/// Dense Jacobian of the semidiscretization RHS by central differences;
/// column j uses step epsilon * (1 + |u_j|). Guarded to M <= 5000.
Eigen::MatrixXd probe_jacobian(const Semidiscretization& semi, const StateVector& base, double t,
                               double epsilon = 1e-6);

Spectrum eigenvalues_dense(const Eigen::MatrixXd& matrix);

/// Clip finite-difference noise: real parts in (0, tol * rho] are set to 0 so
/// the strict feasibility test of the optimizer stays attainable.
void clean_spectrum(Spectrum& spectrum, double relative_tol = 1e-6);

/// Probe + eigensolve + clean in one go.
Spectrum probe_spectrum(const Semidiscretization& semi, const StateVector& base, double t);

struct OptimizationResult {
  double dt_max = 0.0;
  StabilityPolynomial alpha;
  double feasibility_margin = 0.0;  // max |P(dt lambda)| - 1 over the spectrum
};

/// Maximize dt such that free monomial coefficients alpha_{p+1..E} exist with
/// |P(dt lambda)| <= 1 + 1e-9 on the spectrum; the inner minimax problem is
/// solved by Lawson-weighted least squares on samples of the convex-hull
/// boundary (origin included).
OptimizationResult optimize_stability_polynomial(const Spectrum& spectrum, int degree,
                                                 int order);

/// Free subdiagonals realizing a given stability polynomial for an archetype
/// member; the p2 chain is solved by back-substitution from the highest
/// monomial down, p3/p4 by (Gauss-)Newton on the recovered coefficients.
std::vector<double> solve_free_coefficients(FamilyKind kind, int S, int E,
                                            const StabilityPolynomial& alpha,
                                            double c_Sminus3 = 1.0);

/// Monomial coefficients recovered by interpolating the stability function at
/// roots of unity.
StabilityPolynomial polynomial_from_tableau(const ButcherTableau& tableau);

struct FamilyOptimization {
  PartitionFamily family;
  std::vector<OptimizationResult> members;  // ascending E, like the family
};

/// Optimize every member of an archetype family for one spectrum. p2 members
/// are optimized in coefficient space and back-substituted; p3/p4 members are
/// optimized directly over their free subdiagonals.
FamilyOptimization optimize_family(FamilyKind kind, const std::vector<int>& E_list,
                                   const Spectrum& spectrum, double c_Sminus3 = 1.0);

// Spectrum files: one "re im" pair per line, '#' comments.
std::string spectrum_to_text(const Spectrum& spectrum);
Spectrum spectrum_from_text(const std::string& text);
void save_spectrum(const Spectrum& spectrum, const std::string& path);
Spectrum load_spectrum(const std::string& path);

}  // namespace perrk

#endif
