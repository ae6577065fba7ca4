#include "qf2/kato.hpp"

#include <stdexcept>

namespace qf2 {

DiffForm differential(const FieldTower& T, const Fe& x) {
  DiffForm f;
  f.n = 1;
  Expansion e = T.expand(x);
  int m = T.basis_size();
  for (int j = 0; j < m; ++j) {
    Fe c = Fe::zero();
    for (auto& [mask, ce] : e)
      if (mask & (1ull << j))
        c = T.add(c, T.mul(T.square(ce), T.basis_monomial(T.depth(), mask ^ (1ull << j))));
    if (!c.is_zero()) f.coef[1ull << j] = c;
  }
  return f;
}

DiffForm dlog(const FieldTower& T, const Fe& x) {
  if (x.is_zero()) throw std::domain_error("dlog of zero");
  DiffForm f = differential(T, x);
  Fe iv = T.inv(x);
  for (auto& [m, c] : f.coef) c = T.mul(c, iv);
  return f;
}

DiffForm add_forms(const FieldTower& T, const DiffForm& a, const DiffForm& b) {
  if (a.n != b.n) throw std::invalid_argument("adding forms of different degree");
  DiffForm f;
  f.n = a.n;
  f.coef = a.coef;
  for (auto& [m, c] : b.coef) {
    auto it = f.coef.find(m);
    if (it == f.coef.end())
      f.coef[m] = c;
    else {
      it->second = T.add(it->second, c);
      if (it->second.is_zero()) f.coef.erase(it);
    }
  }
  return f;
}

DiffForm wedge(const FieldTower& T, const DiffForm& a, const DiffForm& b) {
  DiffForm f;
  f.n = a.n + b.n;
  for (auto& [ma, ca] : a.coef)
    for (auto& [mb, cb] : b.coef) {
      if (ma & mb) continue;  // repeated db_j kills the term (char 2: no sign)
      uint64_t m = ma | mb;
      Fe c = T.mul(ca, cb);
      auto it = f.coef.find(m);
      if (it == f.coef.end()) {
        if (!c.is_zero()) f.coef[m] = std::move(c);
      } else {
        it->second = T.add(it->second, c);
        if (it->second.is_zero()) f.coef.erase(it);
      }
    }
  return f;
}

DiffForm e_n(const FieldTower& T, const std::vector<PfisterTerm>& terms) {
  if (terms.empty()) return DiffForm{};
  int n = (int)terms[0].gens.size();
  DiffForm acc;
  acc.n = n;
  for (auto& t : terms) {
    if ((int)t.gens.size() != n)
      throw std::invalid_argument("mixed Pfister fold numbers in e_n");
    DiffForm w;
    w.n = 0;
    w.coef[0] = Fe::one();
    for (auto& g : t.gens) w = wedge(T, w, dlog(T, g));
    acc = add_forms(T, acc, w);
  }
  return acc;
}

bool in_I_next(const FieldTower& T, const std::vector<PfisterTerm>& terms) {
  return e_n(T, terms).is_zero();
}

std::string str(const FieldTower& T, const DiffForm& f) {
  if (f.coef.empty()) return "0";
  std::string out;
  for (auto& [m, c] : f.coef) {
    if (!out.empty()) out += " + ";
    out += "(" + T.str(c) + ")";
    uint64_t mm = m;
    while (mm) {
      int j = __builtin_ctzll(mm);
      mm &= mm - 1;
      out += " d" + T.basis_label(j);
    }
  }
  return out;
}

}  // namespace qf2
