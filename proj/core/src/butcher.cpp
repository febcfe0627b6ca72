#include "perrk/butcher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace perrk {

namespace {

constexpr double kP4_cSm2 = 0.479274057836310;
constexpr double kP4_aSm2 = 0.114851811257441;   // divided by c_{S-3}
constexpr double kP4_aSm1 = 0.648906880894214;
constexpr double kP4_aS = 0.0283121635129678;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> shared_weights(FamilyKind kind, int S) {
  std::vector<double> b(S, 0.0);
  switch (kind) {
    case FamilyKind::p2:
      b[S - 1] = 1.0;
      break;
    case FamilyKind::p3_variant:
      b[0] = 1.0 / 6.0;
      b[S - 2] = 1.0 / 6.0;
      b[S - 1] = 2.0 / 3.0;
      break;
    case FamilyKind::p3_original:
      b[S - 2] = 3.0 / 4.0;
      b[S - 1] = 1.0 / 4.0;
      break;
    case FamilyKind::p4:
      b[S - 2] = 0.5;
      b[S - 1] = 0.5;
      break;
  }
  return b;
}

int min_evaluations(FamilyKind kind) {
  return kind == FamilyKind::p4 ? 5 : 3;
}

ButcherTableau build_member_impl(FamilyKind kind, int S, int E,
                                 const std::vector<double>& free_subdiagonals,
                                 const std::vector<double>& c, bool enforce_signs) {
  PERRK_REQUIRE(E >= min_evaluations(kind) && E <= S,
                "member evaluation count out of range for archetype");
  PERRK_REQUIRE(static_cast<int>(free_subdiagonals.size()) == free_coefficient_count(kind, E),
                "inconsistent free coefficient count");

  ButcherTableau t;
  t.S = S;
  t.A.assign(static_cast<std::size_t>(S) * S, 0.0);
  t.b = shared_weights(kind, S);
  t.c = c;

  for (int i = 1; i < S; ++i) t.a(i, 0) = c[i];

  // Chain rows (single subdiagonal plus first column) are S-E+2 .. S-1, 0-based.
  const int chain_begin = S - E + 2;
  auto set_subdiagonal = [&](int i, double a) {
    t.a(i, i - 1) = a;
    t.a(i, 0) = c[i] - a;
  };

  std::size_t next_free = 0;
  int derived_rows = kind == FamilyKind::p4 ? 3 : (kind == FamilyKind::p2 ? 0 : 1);
  for (int i = chain_begin; i < S - derived_rows; ++i)
    set_subdiagonal(i, free_subdiagonals[next_free++]);

  if (kind == FamilyKind::p3_variant || kind == FamilyKind::p3_original) {
    // Third-order condition b^T A c = 1/6 pins the last subdiagonal.
    double ac_sm2 = 0.0;
    for (int j = 0; j < S - 2; ++j) ac_sm2 += t.a(S - 2, j) * c[j];
    const double a_last = (1.0 / 6.0 - t.b[S - 2] * ac_sm2) / (t.b[S - 1] * c[S - 2]);
    PERRK_REQUIRE(std::isfinite(a_last), "no solution for the p3 coupling coefficient");
    set_subdiagonal(S - 1, a_last);
  } else if (kind == FamilyKind::p4) {
    PERRK_REQUIRE(c[S - 4] != 0.0, "c_{S-3} = 0: division by zero in the p4 base coefficients");
    set_subdiagonal(S - 3, kP4_aSm2 / c[S - 4]);
    set_subdiagonal(S - 2, kP4_aSm1);
    set_subdiagonal(S - 1, kP4_aS);
  }

  if (enforce_signs) {
    const double tol = -1e-14;
    if (kind == FamilyKind::p2) {
      for (int i = 1; i < S; ++i)
        PERRK_REQUIRE(t.a(i, 0) >= tol, "free coefficient produces negative first-column entry");
    } else if (kind != FamilyKind::p3_original) {
      for (int i = 0; i < S; ++i)
        for (int j = 0; j < i; ++j)
          PERRK_REQUIRE(t.a(i, j) >= tol, "no nonnegative solution for the coupling coefficients");
    }
  }
  return t;
}

PartitionFamily assemble_family(FamilyKind kind, int S, const std::vector<int>& E_list,
                                const std::vector<std::vector<double>>& free_subdiagonals,
                                const std::vector<double>& c, bool enforce_signs) {
  PERRK_REQUIRE(S >= (kind == FamilyKind::p4 ? 5 : 3), "too few stages for archetype");
  PERRK_REQUIRE(!E_list.empty(), "empty member list");
  PERRK_REQUIRE(std::is_sorted(E_list.begin(), E_list.end()) &&
                    std::adjacent_find(E_list.begin(), E_list.end()) == E_list.end(),
                "E must be strictly increasing");
  PERRK_REQUIRE(E_list.back() == S, "largest member must have E = S");
  PERRK_REQUIRE(free_subdiagonals.size() == E_list.size(), "inconsistent member count");
  PERRK_REQUIRE(static_cast<int>(c.size()) == S, "abscissae length mismatch");

  PartitionFamily fam;
  fam.kind = kind;
  fam.order = family_order(kind);
  fam.S = S;
  fam.R = static_cast<int>(E_list.size());
  fam.E = E_list;
  for (int r = 0; r < fam.R; ++r) {
    fam.members.push_back(
        build_member_impl(kind, S, E_list[r], free_subdiagonals[r], c, enforce_signs));
    fam.active_sets.push_back(active_stage_set(fam.members.back()));
    PERRK_REQUIRE(static_cast<int>(fam.active_sets.back().size()) == E_list[r],
                  "active stage set does not match E");
  }
  return fam;
}

}  // namespace

int family_order(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::p2: return 2;
    case FamilyKind::p3_variant:
    case FamilyKind::p3_original: return 3;
    case FamilyKind::p4: return 4;
  }
  return 0;
}

std::string family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::p2: return "p2";
    case FamilyKind::p3_variant: return "p3";
    case FamilyKind::p3_original: return "p3-original";
    case FamilyKind::p4: return "p4";
  }
  return "?";
}

FamilyKind family_kind_from_name(const std::string& name) {
  if (name == "p2") return FamilyKind::p2;
  if (name == "p3" || name == "p3-variant") return FamilyKind::p3_variant;
  if (name == "p3-original") return FamilyKind::p3_original;
  if (name == "p4") return FamilyKind::p4;
  throw Error("unknown family kind: " + name);
}

int free_coefficient_count(FamilyKind kind, int E) {
  switch (kind) {
    case FamilyKind::p2: return E - 2;
    case FamilyKind::p3_variant:
    case FamilyKind::p3_original: return E - 3;
    case FamilyKind::p4: return E - 5;
  }
  return 0;
}

std::vector<double> default_abscissae(FamilyKind kind, int S, double c_Sminus3) {
  std::vector<double> c(S, 0.0);
  switch (kind) {
    case FamilyKind::p2:
      // Linear rule matching the printed S=6 tableau: c_S = 1/2 (order 2).
      for (int i = 1; i < S; ++i) c[i] = static_cast<double>(i) / (2.0 * (S - 1));
      break;
    case FamilyKind::p3_variant:
    case FamilyKind::p3_original:
      for (int i = 1; i <= S - 3; ++i) c[i] = static_cast<double>(i) / (S - 3);
      c[S - 2] = kind == FamilyKind::p3_variant ? 1.0 : 1.0 / 3.0;
      c[S - 1] = kind == FamilyKind::p3_variant ? 0.5 : 1.0;
      break;
    case FamilyKind::p4: {
      const double sqrt3_6 = std::sqrt(3.0) / 6.0;
      for (int i = 1; i <= S - 5; ++i) c[i] = 1.0;
      if (S >= 5) c[S - 4] = c_Sminus3;
      c[S - 3] = kP4_cSm2;
      c[S - 2] = 0.5 + sqrt3_6;
      c[S - 1] = 0.5 - sqrt3_6;
      break;
    }
  }
  return c;
}

ButcherTableau build_member(FamilyKind kind, int S, int E,
                            const std::vector<double>& free_subdiagonals,
                            const std::vector<double>& abscissae, double c_Sminus3,
                            bool enforce_signs) {
  const std::vector<double> c =
      abscissae.empty() ? default_abscissae(kind, S, c_Sminus3) : abscissae;
  return build_member_impl(kind, S, E, free_subdiagonals, c, enforce_signs);
}

PartitionFamily build_perk2(int S, const std::vector<int>& E_list,
                            const std::vector<std::vector<double>>& free_subdiagonals,
                            const std::vector<double>& abscissae) {
  const std::vector<double> c =
      abscissae.empty() ? default_abscissae(FamilyKind::p2, S) : abscissae;
  return assemble_family(FamilyKind::p2, S, E_list, free_subdiagonals, c, true);
}

PartitionFamily build_perk3_variant(int S, const std::vector<int>& E_list,
                                    const std::vector<std::vector<double>>& free_subdiagonals) {
  return assemble_family(FamilyKind::p3_variant, S, E_list, free_subdiagonals,
                         default_abscissae(FamilyKind::p3_variant, S), true);
}

PartitionFamily build_perk3_original(int S, const std::vector<int>& E_list,
                                     const std::vector<std::vector<double>>& free_subdiagonals) {
  return assemble_family(FamilyKind::p3_original, S, E_list, free_subdiagonals,
                         default_abscissae(FamilyKind::p3_original, S), true);
}

PartitionFamily build_perk4(int S, const std::vector<int>& E_list,
                            const std::vector<std::vector<double>>& free_subdiagonals,
                            double c_Sminus3) {
  return assemble_family(FamilyKind::p4, S, E_list, free_subdiagonals,
                         default_abscissae(FamilyKind::p4, S, c_Sminus3), true);
}

PartitionFamily build_family(FamilyKind kind, int S, const std::vector<int>& E_list,
                             const std::vector<std::vector<double>>& free_subdiagonals,
                             double c_Sminus3) {
  switch (kind) {
    case FamilyKind::p2: return build_perk2(S, E_list, free_subdiagonals);
    case FamilyKind::p3_variant: return build_perk3_variant(S, E_list, free_subdiagonals);
    case FamilyKind::p3_original: return build_perk3_original(S, E_list, free_subdiagonals);
    case FamilyKind::p4: return build_perk4(S, E_list, free_subdiagonals, c_Sminus3);
  }
  throw Error("unreachable");
}

std::complex<double> stability_function(const ButcherTableau& t, std::complex<double> z) {
  std::vector<std::complex<double>> k(t.S);
  for (int i = 0; i < t.S; ++i) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < i; ++j)
      if (t.a(i, j) != 0.0) acc += t.a(i, j) * k[j];
    k[i] = 1.0 + z * acc;
  }
  std::complex<double> r = 0.0;
  for (int i = 0; i < t.S; ++i)
    if (t.b[i] != 0.0) r += t.b[i] * k[i];
  return 1.0 + z * r;
}

std::vector<double> order_condition_residuals(const ButcherTableau& t, int p) {
  PERRK_REQUIRE(p >= 1 && p <= 4, "order conditions implemented up to order 4");
  const int S = t.S;
  auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (int i = 0; i < S; ++i) s += x[i] * y[i];
    return s;
  };
  auto Ax = [&](const std::vector<double>& x) {
    std::vector<double> y(S, 0.0);
    for (int i = 0; i < S; ++i)
      for (int j = 0; j < i; ++j) y[i] += t.a(i, j) * x[j];
    return y;
  };
  std::vector<double> one(S, 1.0), c = t.c, c2(S), c3(S);
  for (int i = 0; i < S; ++i) {
    c2[i] = c[i] * c[i];
    c3[i] = c2[i] * c[i];
  }

  std::vector<double> res;
  res.push_back(dot(t.b, one) - 1.0);
  if (p >= 2) res.push_back(dot(t.b, c) - 0.5);
  if (p >= 3) {
    res.push_back(dot(t.b, c2) - 1.0 / 3.0);
    res.push_back(dot(t.b, Ax(c)) - 1.0 / 6.0);
  }
  if (p >= 4) {
    res.push_back(dot(t.b, c3) - 0.25);
    std::vector<double> bc(S);
    for (int i = 0; i < S; ++i) bc[i] = t.b[i] * c[i];
    res.push_back(dot(bc, Ax(c)) - 0.125);
    res.push_back(dot(t.b, Ax(c2)) - 1.0 / 12.0);
    res.push_back(dot(t.b, Ax(Ax(c))) - 1.0 / 24.0);
  }
  return res;
}

ConsistencyReport check_internal_consistency(const PartitionFamily& fam) {
  ConsistencyReport rep;
  rep.shared_weights = true;
  rep.shared_abscissae = true;
  for (const auto& m : fam.members) {
    rep.shared_weights = rep.shared_weights && m.b == fam.members.front().b;
    rep.shared_abscissae = rep.shared_abscissae && m.c == fam.members.front().c;
    for (int i = 0; i < m.S; ++i) {
      double row = 0.0;
      for (int j = 0; j < i; ++j) row += m.a(i, j);
      rep.max_row_sum_deviation = std::max(rep.max_row_sum_deviation, std::abs(row - m.c[i]));
    }
  }
  rep.consistent =
      rep.shared_weights && rep.shared_abscissae && rep.max_row_sum_deviation <= 1e-14;
  return rep;
}

std::set<int> active_stage_set(const ButcherTableau& t) {
  std::set<int> active;
  active.insert(0);
  for (int i = 0; i < t.S; ++i)
    if (t.b[i] != 0.0) active.insert(i);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i : std::set<int>(active))
      for (int j = 0; j < i; ++j)
        if (t.a(i, j) != 0.0 && active.insert(j).second) grew = true;
  }
  return active;
}

std::string family_to_text(const PartitionFamily& fam) {
  std::ostringstream os;
  os << fam.S << " " << fam.R << "\n";
  os << "# kind " << family_kind_name(fam.kind) << "\n";
  for (int i = 0; i < fam.S; ++i) os << (i ? " " : "") << fmt17(fam.members[0].c[i]);
  os << "\n";
  for (int i = 0; i < fam.S; ++i) os << (i ? " " : "") << fmt17(fam.members[0].b[i]);
  os << "\n";
  for (int r = 0; r < fam.R; ++r) {
    os << fam.E[r] << "\n";
    for (int i = 0; i < fam.S; ++i) {
      for (int j = 0; j < fam.S; ++j) os << (j ? " " : "") << fmt17(fam.members[r].a(i, j));
      os << "\n";
    }
  }
  if (!fam.dt_max.empty()) {
    os << "dt_max";
    for (double v : fam.dt_max) os << " " << fmt17(v);
    os << "\n";
  }
  return os.str();
}

PartitionFamily family_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto next_data_line = [&]() -> std::string {
    while (std::getline(is, line)) {
      std::size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '#') {
        // "# kind <name>" is the only structured comment.
        std::istringstream cs(line.substr(pos + 1));
        std::string key, value;
        cs >> key >> value;
        if (key == "kind") return "#kind " + value;
        continue;
      }
      return line;
    }
    return {};
  };

  PartitionFamily fam;
  std::string first = next_data_line();
  PERRK_REQUIRE(!first.empty(), "empty family file");
  {
    std::istringstream ls(first);
    PERRK_REQUIRE(static_cast<bool>(ls >> fam.S >> fam.R), "malformed family header");
  }
  PERRK_REQUIRE(fam.S >= 1 && fam.R >= 1, "malformed family header");

  std::string kind_name;
  std::vector<double> c, b;
  auto read_row = [&](std::vector<double>& row, int n) {
    std::string l = next_data_line();
    if (l.rfind("#kind ", 0) == 0) {
      kind_name = l.substr(6);
      l = next_data_line();
    }
    std::istringstream ls(l);
    row.resize(n);
    for (int i = 0; i < n; ++i) PERRK_REQUIRE(static_cast<bool>(ls >> row[i]), "short row");
  };
  read_row(c, fam.S);
  read_row(b, fam.S);

  for (int r = 0; r < fam.R; ++r) {
    std::vector<double> e;
    read_row(e, 1);
    fam.E.push_back(static_cast<int>(e[0]));
    ButcherTableau t;
    t.S = fam.S;
    t.b = b;
    t.c = c;
    t.A.resize(static_cast<std::size_t>(fam.S) * fam.S);
    for (int i = 0; i < fam.S; ++i) {
      std::vector<double> row;
      read_row(row, fam.S);
      for (int j = 0; j < fam.S; ++j) t.a(i, j) = row[j];
    }
    fam.members.push_back(std::move(t));
    fam.active_sets.push_back(active_stage_set(fam.members.back()));
  }

  // Optional trailing dt_max line.
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "dt_max") {
      double v;
      while (ls >> v) fam.dt_max.push_back(v);
    }
  }

  if (!kind_name.empty()) fam.kind = family_kind_from_name(kind_name);
  fam.order = family_order(fam.kind);
  return fam;
}

void save_family(const PartitionFamily& fam, const std::string& path) {
  std::ofstream os(path);
  PERRK_REQUIRE(os.good(), "cannot open " + path);
  os << family_to_text(fam);
}

PartitionFamily load_family(const std::string& path) {
  std::ifstream isf(path);
  PERRK_REQUIRE(isf.good(), "cannot open " + path);
  std::ostringstream buf;
  buf << isf.rdbuf();
  return family_from_text(buf.str());
}

}  // namespace perrk
