#include "qf2/qform.hpp"

#include <stdexcept>

namespace qf2 {

namespace {
const FieldTower& common_field(const QForm& a, const QForm& b) {
  if (a.F != b.F && !(a.F && b.F && a.F->extends(*b.F) && b.F->extends(*a.F)))
    throw std::invalid_argument("forms live over different fields");
  return *a.F;
}
}  // namespace

QForm perp(const QForm& a, const QForm& b) {
  common_field(a, b);
  QForm r = a;
  r.diag.insert(r.diag.end(), b.diag.begin(), b.diag.end());
  return r;
}

QForm tensor(const QForm& a, const QForm& b) {
  const FieldTower& T = common_field(a, b);
  QForm r{a.F, {}};
  r.diag.reserve(a.diag.size() * b.diag.size());
  for (auto& x : a.diag)
    for (auto& y : b.diag) r.diag.push_back(T.mul(x, y));
  return r;
}

QForm scaled(const FieldTower& T, const Fe& c, QForm a) {
  for (auto& x : a.diag) x = T.mul(c, x);
  return a;
}

QForm pfister_qf(TowerPtr F, const std::vector<Fe>& gens) {
  if (gens.size() > 20) throw std::length_error("pfister form too large");
  QForm r{F, {}};
  r.diag.resize(1ull << gens.size());
  r.diag[0] = Fe::one();
  for (uint64_t m = 1; m < r.diag.size(); ++m) {
    int lo = __builtin_ctzll(m);
    r.diag[m] = F->mul(r.diag[m & (m - 1)], gens[lo]);
  }
  return r;
}

QForm pure_pfister_qf(TowerPtr F, const std::vector<Fe>& gens) {
  QForm r = pfister_qf(F, gens);
  r.diag.erase(r.diag.begin());
  return r;
}

QForm scalar_extend(const QForm& phi, TowerPtr L) {
  if (!L->extends(*phi.F)) throw std::invalid_argument("not an extension of the base field");
  return QForm{std::move(L), phi.diag};
}

WittQf witt_decompose_qf(const QForm& phi, const RankOptions& opt) {
  const FieldTower& T = *phi.F;
  std::vector<SparseVec> rows;
  rows.reserve(phi.diag.size());
  for (auto& a : phi.diag) rows.push_back(T.expand(a));
  SelectResult sel = select_independent(T, rows, opt);
  WittQf w;
  w.i0 = phi.dim() - (int)sel.independent.size();
  w.anis.F = phi.F;
  for (int i : sel.independent) {
    w.anis.diag.push_back(phi.diag[i]);
    w.anis_indices.push_back(i);
  }
  return w;
}

std::optional<std::vector<Fe>> represents(const QForm& phi, const Fe& a,
                                          const RankOptions& opt) {
  const FieldTower& T = *phi.F;
  Echelon ech(T);
  std::vector<int> kept;
  for (int i = 0; i < phi.dim(); ++i)
    if (ech.insert(T.expand(phi.diag[i]))) kept.push_back(i);
  auto w = ech.reduce(T.expand(a));
  if (!w) return std::nullopt;
  std::vector<Fe> full(phi.dim(), Fe::zero());
  for (size_t j = 0; j < w->size(); ++j) full[kept[j]] = (*w)[j];
  return full;
}

namespace {
// Greedy 2-basis of the field generated by `items` over F^2.  Maintains the
// full list of subset products so that span membership is plain linear
// algebra.  Returns (gens, products-in-mask-order).
std::pair<std::vector<Fe>, std::vector<Fe>> field_two_basis(const FieldTower& T,
                                                            const std::vector<Fe>& items,
                                                            const RankOptions& opt) {
  std::vector<Fe> gens, prods{Fe::one()};
  SquareSpan span(T, opt);
  span.add(Fe::one());
  for (const Fe& c : items) {
    if (c.is_zero()) throw std::invalid_argument("zero generator");
    if (span.contains(c)) continue;
    gens.push_back(c);
    // double the product list; new products sit at masks old..2*old-1, which
    // is exactly mask order for the enlarged generator set
    size_t old = prods.size();
    for (size_t i = 0; i < old; ++i) {
      Fe p = T.mul(prods[i], c);
      if (span.add(p).has_value())
        throw std::logic_error("subset products of 2-independent gens must be independent");
      prods.push_back(std::move(p));
    }
  }
  return {std::move(gens), std::move(prods)};
}
}  // namespace

NormData norm_data(const QForm& phi, const RankOptions& opt) {
  const FieldTower& T = *phi.F;
  Fe scale;
  std::vector<Fe> ratios;
  for (auto& a : phi.diag) {
    if (a.is_zero()) continue;
    if (scale.is_zero()) {
      scale = a;
      continue;
    }
    ratios.push_back(T.div(a, scale));
  }
  if (scale.is_zero()) throw std::invalid_argument("norm field of the zero form");
  auto [gens, prods] = field_two_basis(T, ratios, opt);
  NormData nd;
  nd.scale = scale;
  nd.gens = gens;
  nd.lndeg = (int)gens.size();
  nd.normform = QForm{phi.F, std::move(prods)};
  return nd;
}

SimData sim_data(const QForm& phi, const RankOptions& opt) {
  const FieldTower& T = *phi.F;
  WittQf w = witt_decompose_qf(phi, opt);
  if (w.i0 != 0) throw std::invalid_argument("sim_data requires an anisotropic form");
  const std::vector<Fe>& d = phi.diag;
  // G(phi) = intersection over i of d_i^{-1} D(phi), as subspaces of the
  // expansion coordinate space.
  std::vector<SparseVec> G;
  for (size_t i = 0; i < d.size(); ++i) {
    Fe di = T.inv(d[i]);
    std::vector<SparseVec> Si;
    for (size_t j = 0; j < d.size(); ++j) Si.push_back(T.expand(T.mul(di, d[j])));
    if (i == 0)
      G = std::move(Si);
    else
      G = intersect_subspaces(T, G, Si);
    if (G.empty()) break;
  }
  std::vector<Fe> elems;
  for (auto& v : G) elems.push_back(T.recombine(v));
  auto [gens, prods] = field_two_basis(T, elems, opt);
  if (G.size() != prods.size())
    throw std::logic_error("similarity factor space has non-2-power dimension");
  SimData sd;
  sd.gens = gens;
  sd.logdim = (int)gens.size();
  sd.simform = QForm{phi.F, std::move(prods)};
  return sd;
}

bool divisible_by(const QForm& phi, const std::vector<Fe>& pfister_gens,
                  const RankOptions& opt) {
  const FieldTower& T = *phi.F;
  SquareSpan D(T, opt);
  std::vector<Fe> indep;
  for (auto& a : phi.diag) {
    if (a.is_zero()) continue;
    if (!D.add(a)) indep.push_back(a);
  }
  // D(pf(gens)) subset of G(phi) iff every generator multiplies D into D
  // (G is a group under multiplication, gens generate the Pfister value set).
  for (auto& g : pfister_gens)
    for (auto& a : indep)
      if (!D.contains(T.mul(g, a))) return false;
  return true;
}

NeighbourInfo neighbour_test(const QForm& phi, const RankOptions& opt) {
  WittQf w = witt_decompose_qf(phi, opt);
  if (w.i0 != 0) throw std::invalid_argument("neighbour test requires an anisotropic form");
  NormData nd = norm_data(phi, opt);
  int s = -1;
  while ((1 << (s + 1)) < phi.dim()) ++s;  // 2^s < dim <= 2^{s+1}
  return NeighbourInfo{nd.lndeg == s + 1, s, std::move(nd)};
}

}  // namespace qf2
