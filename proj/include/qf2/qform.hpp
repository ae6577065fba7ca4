// Quasilinear quadratic forms <a_1,...,a_n> over characteristic-2 towers:
// totally singular diagonal forms phi(x) = sum a_i x_i^2.  The value set
// D(phi) is the F^2-span of the entries, and phi is determined up to isometry
// by (D(phi), dim), so everything here is rank/solve on square expansions.
#pragma once

#include <optional>
#include <vector>

#include "qf2/linalg.hpp"
#include "qf2/tower.hpp"

namespace qf2 {

struct QForm {
  TowerPtr F;
  std::vector<Fe> diag;  // entries; zeros allowed (they contribute to i0)

  int dim() const { return (int)diag.size(); }
};

QForm perp(const QForm& a, const QForm& b);
QForm tensor(const QForm& a, const QForm& b);
QForm scaled(const FieldTower& T, const Fe& c, QForm a);
// <<g_1,...,g_n>> = <1, g_1, g_2, g_1 g_2, ...>: all square-free products in
// subset-mask order.
QForm pfister_qf(TowerPtr F, const std::vector<Fe>& gens);
QForm pure_pfister_qf(TowerPtr F, const std::vector<Fe>& gens);  // drop the leading 1

// Reinterpret over an extension tower (throws if L does not extend phi.F).
QForm scalar_extend(const QForm& phi, TowerPtr L);

struct WittQf {
  int i0 = 0;
  QForm anis;                      // earliest maximal independent subsequence
  std::vector<int> anis_indices;   // positions in the input diagonal
};
WittQf witt_decompose_qf(const QForm& phi, const RankOptions& opt = {});

// If a = sum lambda_i^2 d_i, the witness lambda (full length, zeros on
// entries not used); nullopt if a is not represented.
std::optional<std::vector<Fe>> represents(const QForm& phi, const Fe& a,
                                          const RankOptions& opt = {});

// Norm field N(phi) = F^2(a_i a_j : i,j), presented by a 2-basis of
// generators after normalizing the first anisotropic entry to 1.
struct NormData {
  Fe scale;               // the entry everything was divided by
  std::vector<Fe> gens;   // 2-basis of N(phi) over F^2
  int lndeg;              // = gens.size()
  QForm normform;         // pfister_qf(gens)
};
NormData norm_data(const QForm& phi, const RankOptions& opt = {});

// Similarity factors G(phi) = {x : x D(phi) = D(phi)} (a field between F^2
// and F), for anisotropic phi.
struct SimData {
  std::vector<Fe> gens;  // 2-basis of G(phi) over F^2
  int logdim;            // [G : F^2] = 2^logdim
  QForm simform;         // pfister_qf(gens)
};
SimData sim_data(const QForm& phi, const RankOptions& opt = {});

// Is phi divisible by the quasi-Pfister form with these generators, i.e.
// D(pf(gens)) contained in G(phi)?
bool divisible_by(const QForm& phi, const std::vector<Fe>& pfister_gens,
                  const RankOptions& opt = {});

// Quasi-Pfister neighbour test: anisotropic phi with 2^s < dim <= 2^{s+1} is
// a neighbour of its norm form iff lndeg = s + 1.
struct NeighbourInfo {
  bool is_neighbour;
  int s;
  NormData norm;
};
NeighbourInfo neighbour_test(const QForm& phi, const RankOptions& opt = {});

}  // namespace qf2
