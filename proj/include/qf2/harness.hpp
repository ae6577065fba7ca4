// Constructions of low-dimensional anisotropic forms representing classes of
// I^n, the constructive Albert-times-Pfister decomposition in dimension
// 2^n + 2^{n-1} (n = 2, 3), and seeded verification suites with JSON reports.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qf2/bilinear.hpp"
#include "qf2/kato.hpp"
#include "qf2/quadric.hpp"

namespace qf2 {

// A class in I^n carried as an explicit sum of scaled n-fold Pfister classes.
struct PfisterCombination {
  std::vector<PfisterTerm> terms;
};

// Anisotropic form of dimension 2^{n+1} - 2^i with certified class in I^n:
//   pf(X_1..X_{i-1}) tensor (pure pf(Y_i..Y_n) perp pure pf(Z_i..Z_n)),
// certificate [pf(X,Y)] + [pf(X,Z)].
struct GapInstance {
  int n = 0, i = 0;
  TowerPtr field;
  BForm form;
  PfisterCombination cert;
};
GapInstance build_gap_form(int n, int i);

// An anisotropic dimension witness for Dim(I^n): form + certificate.
struct DimWitness {
  int n = 0, dim = 0;
  TowerPtr field;
  BForm form;
  PfisterCombination cert;
  bool reachable = true;        // false: parameterization gap, form empty
  bool fully_verified = false;  // n <= 3: dimension + anisotropy re-proved
  std::vector<std::string> notes;
};

// d in Dim(I^n) implies d + 2^n: adjoin X_0..X_n, take b perp X_0 pf(X_1..X_n).
DimWitness add_2n(const DimWitness& w);

// The interval [2^{n+1}, 2^{n+1} + 2^n): b = anis(c perp d) with c the gap
// form and d = pf(Y_i..Y_{i+a-1}, Z_i..Z_{i+b-1}, W_{a+b+1}..W_n), of
// dimension 2^{n+1} + 2(2^{n-1} - 2^{i-1} - 2^a - 2^b + 2) and
// lndeg(phi_b) = 2n + 2 - (a + b).
struct OptimalityInstance {
  DimWitness w;
  int i = 0, a = 0, b = 0;
  int predicted_dim = 0, predicted_lndeg = 0, lndeg = 0;
  std::optional<int> i1;  // computed on request for n <= 3
};
OptimalityInstance build_optimality_form(int n, int i, int a, int b,
                                         bool want_i1 = false,
                                         const RankOptions& opt = {});

// Search the gap / optimality / +2^n parameterizations for an even target
// dimension; w.reachable = false reports a parameterization gap.
DimWitness dim_witness(int n, int target_dim);

// b ~= c tensor d with c an (n-2)-fold bilinear Pfister form and d an Albert
// form (dim 6, trivial determinant).  n = 2: gate is det(b) trivial.  n = 3:
// certificate required; bounded searches guided by lndeg(phi_b).
struct AlbertDecomposition {
  std::vector<Fe> c_gens;
  std::vector<Fe> d_entries;
  bool verified = false;
  std::vector<std::string> notes;
};
AlbertDecomposition albert_decompose(const BForm& b, int n,
                                     const PfisterCombination* cert = nullptr,
                                     const RankOptions& opt = {});

// For anisotropic b of dimension 2^n with [b] in I^n (Hauptsatz equality
// case): recover x and generators with b ~= x * pf(gens), verified by an
// exact isometry; nullopt if the bounded search fails.
struct PfisterStructure {
  Fe scale;
  std::vector<Fe> gens;
};
std::optional<PfisterStructure> recover_pfister_structure(const BForm& b, int n,
                                                          const RankOptions& opt = {});

struct SuiteReport {
  nlohmann::json doc;
  int passed = 0, failed = 0, unverified = 0;
  bool ok() const { return failed == 0; }
};

// Seeded, deterministic suites.  budget_s <= 0 keeps the default case counts;
// a smaller budget scales them down proportionally (never below 1).
// Known ids: hauptsatz, gap, construction, optimality, corollary, quarter_i1,
// kato, albert, crosschecks, unverified.
SuiteReport run_suite(const std::string& suite_id, uint64_t seed = 0,
                      int budget_s = 0, bool exact = false);
std::vector<std::string> suite_names();

}  // namespace qf2
