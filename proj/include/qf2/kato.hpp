// Differential forms over a tower field K: Omega^n with respect to the
// 2-basis b_0..b_{m-1} of the tower (db_j for basis members).  From the
// square expansion x = sum c_e^2 m_e one gets
//
//   dx = sum_e c_e^2 sum_{j in e} m_{e \ j} db_j
//
// and the Kato invariant of a sum of scaled n-fold Pfister classes
// [x_i <<g_i1,...,g_in>>] is  e_n = sum_i dlog(g_i1) ^ ... ^ dlog(g_in),
// whose exact vanishing decides membership in I^{n+1} (mod I^{n+1}).
#pragma once

#include <map>
#include <vector>

#include "qf2/tower.hpp"

namespace qf2 {

struct DiffForm {
  int n = 0;                     // form degree
  std::map<uint64_t, Fe> coef;   // n-subset mask of basis indices -> coefficient

  bool is_zero() const { return coef.empty(); }
};

DiffForm differential(const FieldTower& T, const Fe& x);      // dx
DiffForm dlog(const FieldTower& T, const Fe& x);              // dx / x
DiffForm wedge(const FieldTower& T, const DiffForm& a, const DiffForm& b);
DiffForm add_forms(const FieldTower& T, const DiffForm& a, const DiffForm& b);

struct PfisterTerm {
  Fe scalar;             // ignored by e_n (well-defined mod I^{n+1})
  std::vector<Fe> gens;  // n generators
};

DiffForm e_n(const FieldTower& T, const std::vector<PfisterTerm>& terms);
bool in_I_next(const FieldTower& T, const std::vector<PfisterTerm>& terms);

std::string str(const FieldTower& T, const DiffForm& f);

}  // namespace qf2
