// Symmetric bilinear forms in characteristic 2, given as diagonal forms
// <a_1,...,a_n>_b (a_i nonzero) plus a count of split hyperbolic planes.
// The quasilinear form of b is phi_b = <a_1,...,a_n> (plus two zero entries
// per hyperbolic plane), and Witt reduction repeatedly contracts an
// F^2-dependency of the diagonal using <a,b>_b = <c, abc>_b for represented
// c, until a two-term dependency splits off a metabolic plane M_c = <c,c>_b.
#pragma once

#include <string>
#include <vector>

#include "qf2/qform.hpp"

namespace qf2 {

struct BForm {
  TowerPtr F;
  std::vector<Fe> diag;  // nonzero entries
  int h_planes = 0;      // perp'd hyperbolic planes

  int dim() const { return (int)diag.size() + 2 * h_planes; }
};

BForm perp_b(const BForm& a, const BForm& b);
BForm tensor_b(const BForm& a, const BForm& b);
BForm scaled_b(const FieldTower& T, const Fe& c, BForm a);
BForm pfister_b(TowerPtr F, const std::vector<Fe>& gens);
BForm pure_pfister_b(TowerPtr F, const std::vector<Fe>& gens);
BForm scalar_extend_b(const BForm& b, TowerPtr L);

// The quasilinear form of b (zeros for hyperbolic planes).
QForm phi_of(const BForm& b);

struct WittB {
  BForm anis;                   // anisotropic kernel form
  std::vector<Fe> m_scalars;    // scalars a with an M_a summand
  int i_M = 0, i_H = 0;         // metabolic / hyperbolic counts; i_W = i_M + i_H
  int i_W = 0;
  int i0 = 0;                   // defect index of phi_b; always i_M + 2 i_H
  std::vector<std::string> trace;
};
WittB witt_reduce(const BForm& b, const RankOptions& opt = {}, bool want_trace = false);

// Product of the diagonal (determinant up to squares; hyperbolic planes
// contribute 1).
Fe determinant_b(const BForm& b);
bool det_trivial(const FieldTower& T, const Fe& d);

// Isometry of *anisotropic* forms: equal dimension + trivial Witt class of
// the orthogonal sum.  (Anisotropic parts of Witt classes are unique;
// isotropic forms are not determined by their class, so this insists on
// anisotropy and throws otherwise.)
bool isometric(const BForm& b, const BForm& c, const RankOptions& opt = {});

// Lift a represented quasilinear subform into an anisotropic b: returns a
// diagonalized subform c with phi_c isometric to phi, and the orthogonal
// complement.  b ≃ c ⟂ comp.  Throws if phi is not represented.
struct LiftResult {
  BForm c;
  BForm comp;
};
LiftResult lift_subform(const BForm& b, const QForm& phi, const RankOptions& opt = {});

// Greedy factorization of anisotropic b into x_i * (lifts of the
// quasi-Pfister form eta = pf(eta_gens)), with backtracking.  May stop with
// a nonempty residual when the budget runs out or no candidate works; that
// is a partial result, not an error.
struct PfisterFactorization {
  std::vector<std::pair<Fe, BForm>> terms;  // (scalar, lift with phi ≃ eta)
  BForm residual;
  bool complete = false;
};
PfisterFactorization pfister_factorize(const BForm& b, const std::vector<Fe>& eta_gens,
                                       const RankOptions& opt = {}, int budget = 256);

// Anisotropic part of b ⟂ c for two lifts of the same quasi-Pfister form
// pi = pf(pi_gens); reports whether the result is again in the lift class
// (quasilinear form isometric to a scalar multiple of pi, representing that
// scalar), which is what the Witt-kernel theory predicts.
struct LiftSum {
  BForm anis;
  bool in_lift_class;  // meaningful when anis nonempty
};
LiftSum pfister_lift_sum(const BForm& b, const BForm& c, const std::vector<Fe>& pi_gens,
                         const RankOptions& opt = {});

}  // namespace qf2
