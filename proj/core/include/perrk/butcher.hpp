#ifndef PERRK_BUTCHER_HPP
#define PERRK_BUTCHER_HPP

#include <complex>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "perrk/common.hpp"

namespace perrk {

/// Explicit Runge-Kutta tableau. A is stored dense row-major; all entries
/// with j >= i are zero. Indices are 0-based in code, 1-based in comments
/// that quote stage numbers.
struct ButcherTableau {
  int S = 0;
  std::vector<double> A;  // S*S, row-major
  std::vector<double> b;
  std::vector<double> c;

  double a(int i, int j) const { return A[static_cast<std::size_t>(i) * S + j]; }
  double& a(int i, int j) { return A[static_cast<std::size_t>(i) * S + j]; }
};

enum class FamilyKind { p2, p3_variant, p3_original, p4 };

int family_order(FamilyKind kind);
std::string family_kind_name(FamilyKind kind);
FamilyKind family_kind_from_name(const std::string& name);

/// R tableaus sharing b and c. Members are stored with E ascending, so
/// E[R-1] == S. Mesh partition levels count the other way (level 1 is the
/// finest/most expensive); member_index_for_level converts.
struct PartitionFamily {
  FamilyKind kind = FamilyKind::p2;
  int order = 2;
  int S = 0;
  int R = 0;
  std::vector<int> E;                       // ascending, E.back() == S
  std::vector<ButcherTableau> members;      // same order as E
  std::vector<std::set<int>> active_sets;   // 0-based stage indices
  std::vector<double> dt_max;               // optional, filled by the optimizer

  const ButcherTableau& member(int idx) const { return members[idx]; }
  int member_index_for_level(int level) const { return R - level; }
  const ButcherTableau& member_for_level(int level) const {
    return members[member_index_for_level(level)];
  }
};

/// Monomial coefficients alpha_0..alpha_degree of P(z) = sum alpha_j z^j.
struct StabilityPolynomial {
  int degree = 0;
  std::vector<double> alpha;
};

// Archetype constructors. free_subdiagonals holds, per member, the chain
// coefficients a_{i,i-1} that are not pinned by order conditions:
//   p2:          rows S-E+3 .. S      (E-2 values)
//   p3 variants: rows S-E+3 .. S-1    (E-3 values; a_{S,S-1} is derived)
//   p4:          rows S-E+3 .. S-3    (E-5 values; last three are fixed)
// An empty abscissae argument selects the default linear rule.
PartitionFamily build_perk2(int S, const std::vector<int>& E_list,
                            const std::vector<std::vector<double>>& free_subdiagonals,
                            const std::vector<double>& abscissae = {});
PartitionFamily build_perk3_variant(int S, const std::vector<int>& E_list,
                                    const std::vector<std::vector<double>>& free_subdiagonals);
PartitionFamily build_perk3_original(int S, const std::vector<int>& E_list,
                                     const std::vector<std::vector<double>>& free_subdiagonals);
PartitionFamily build_perk4(int S, const std::vector<int>& E_list,
                            const std::vector<std::vector<double>>& free_subdiagonals,
                            double c_Sminus3 = 1.0);

PartitionFamily build_family(FamilyKind kind, int S, const std::vector<int>& E_list,
                             const std::vector<std::vector<double>>& free_subdiagonals,
                             double c_Sminus3 = 1.0);

/// Single family member, used by the optimizer to evaluate candidate
/// coefficient sets without assembling a whole family.
ButcherTableau build_member(FamilyKind kind, int S, int E,
                            const std::vector<double>& free_subdiagonals,
                            const std::vector<double>& abscissae = {}, double c_Sminus3 = 1.0,
                            bool enforce_signs = true);

/// Number of free subdiagonals of a member with E stage evaluations.
int free_coefficient_count(FamilyKind kind, int E);

/// Default abscissae of an archetype (used when nothing is passed in).
std::vector<double> default_abscissae(FamilyKind kind, int S, double c_Sminus3 = 1.0);

/// R(z) evaluated through the stage recursion; for explicit tableaus this is
/// the degree-S polynomial 1 + z b^T (I - zA)^{-1} 1.
std::complex<double> stability_function(const ButcherTableau& tableau, std::complex<double> z);

/// Rooted-tree order-condition residuals up to order p
/// (1 condition at order 1 and 2, two at order 3, four at order 4).
std::vector<double> order_condition_residuals(const ButcherTableau& tableau, int p);

struct ConsistencyReport {
  bool consistent = false;
  double max_row_sum_deviation = 0.0;
  bool shared_weights = false;
  bool shared_abscissae = false;
};

/// Row sums of every member against the shared c, tolerance 1e-14.
ConsistencyReport check_internal_consistency(const PartitionFamily& family);

/// Minimal stage set influencing the update: backward reachability through
/// nonzero A columns from the nonzero b entries; stage 0 always included.
std::set<int> active_stage_set(const ButcherTableau& tableau);

// Plain-text family format: "S R", c row, b row, then per member E^(r) and
// S rows of A; 17 significant digits. An optional trailing "dt_max ..." line
// carries per-member optimized timesteps.
std::string family_to_text(const PartitionFamily& family);
PartitionFamily family_from_text(const std::string& text);
void save_family(const PartitionFamily& family, const std::string& path);
PartitionFamily load_family(const std::string& path);

}  // namespace perrk

#endif
