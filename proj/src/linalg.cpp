#include "qf2/linalg.hpp"

#include <algorithm>

namespace qf2 {

void axpy(const FieldTower& T, SparseVec& w, const Fe& c, const SparseVec& v) {
  if (c.is_zero()) return;
  for (auto& [m, x] : v) {
    auto it = w.find(m);
    if (it == w.end()) {
      Fe nv = T.mul(c, x);
      if (!nv.is_zero()) w.emplace(m, std::move(nv));
    } else {
      it->second = T.add(it->second, T.mul(c, x));
      if (it->second.is_zero()) w.erase(it);
    }
  }
}

SparseVec scale(const FieldTower& T, const Fe& c, const SparseVec& v) {
  SparseVec w;
  if (c.is_zero()) return w;
  for (auto& [m, x] : v) w.emplace(m, T.mul(c, x));
  return w;
}

// ---------------------------------------------------------------------------
// exact echelon

void Echelon::eliminate(SparseVec& v, std::vector<Fe>& combo) const {
  combo.assign(n_inserted_, Fe::zero());
  for (auto& row : rows_) {
    auto it = v.find(row.pivot);
    if (it == v.end()) continue;
    Fe c = it->second;  // row pivot is normalized to 1
    axpy(*T_, v, c, row.v);
    for (int i = 0; i < (int)row.combo.size(); ++i)
      combo[i] = T_->add(combo[i], T_->mul(c, row.combo[i]));
  }
}

bool Echelon::insert(const SparseVec& v, std::vector<Fe>* witness) {
  SparseVec r = v;
  std::vector<Fe> combo;
  eliminate(r, combo);
  if (r.empty()) {
    // witnesses index the independent rows only, in insertion order
    if (witness) *witness = std::move(combo);
    return false;
  }
  // pick the smallest mask as pivot and normalize it to 1
  uint64_t piv = r.begin()->first;
  Fe iv = T_->inv(r.begin()->second);
  SparseVec nv = scale(*T_, iv, r);
  std::vector<Fe> ncombo(n_inserted_ + 1, Fe::zero());
  for (int i = 0; i < n_inserted_; ++i) ncombo[i] = T_->mul(iv, combo[i]);
  ncombo[n_inserted_] = iv;  // v itself
  // combo semantics: row.v = sum combo_i * original_i... originals here are
  // the *independent* inserted vectors, in insertion order.
  ++n_inserted_;
  rows_.push_back({std::move(nv), std::move(ncombo), piv});
  return true;
}

std::optional<std::vector<Fe>> Echelon::reduce(const SparseVec& v) const {
  SparseVec r = v;
  std::vector<Fe> combo;
  eliminate(r, combo);
  if (!r.empty()) return std::nullopt;
  return combo;
}

SparseVec Echelon::residual(const SparseVec& v) const {
  SparseVec r = v;
  std::vector<Fe> combo;
  eliminate(r, combo);
  return r;
}

// ---------------------------------------------------------------------------
// hybrid rank selection

namespace {

// Dense-ish echelon over GF(2^k) for one specialization point.
struct McEchelon {
  const Gf2kField* F;
  struct Row {
    std::map<uint64_t, uint64_t> v;
    uint64_t pivot;
  };
  std::vector<Row> rows;

  // reduce a copy of v; true if residual nonzero (=> exactly independent)
  bool reduces_to_nonzero(std::map<uint64_t, uint64_t> v, bool do_insert) {
    for (auto& row : rows) {
      auto it = v.find(row.pivot);
      if (it == v.end()) continue;
      uint64_t c = it->second;
      for (auto& [m, x] : row.v) {
        uint64_t nx = v[m] ^ F->mul(c, x);
        if (nx)
          v[m] = nx;
        else
          v.erase(m);
      }
    }
    if (v.empty()) return false;
    if (do_insert) {
      uint64_t piv = v.begin()->first;
      uint64_t iv = F->inv(v.begin()->second);
      for (auto& [m, x] : v) x = F->mul(x, iv);
      rows.push_back({std::move(v), piv});
    }
    return true;
  }
};

std::map<uint64_t, uint64_t> specialize_vec(const FieldTower& T, const SparseVec& v,
                                            const FieldTower::Spec& s, bool& ok) {
  std::map<uint64_t, uint64_t> out;
  for (auto& [m, c] : v) {
    auto val = T.eval(c, s);
    if (!val) {
      ok = false;
      return {};
    }
    if (*val) out[m] = *val;
  }
  return out;
}

}  // namespace

SelectResult select_independent_exact(const FieldTower& T,
                                      const std::vector<SparseVec>& rows) {
  SelectResult res;
  Echelon ech(T);
  for (int i = 0; i < (int)rows.size(); ++i) {
    std::vector<Fe> w;
    if (ech.insert(rows[i], &w))
      res.independent.push_back(i);
    else
      res.dependent.push_back({i, std::move(w)});
  }
  return res;
}

SelectResult select_independent(const FieldTower& T, const std::vector<SparseVec>& rows,
                                const RankOptions& opt) {
  if (!opt.use_mc) return select_independent_exact(T, rows);

  std::mt19937_64 rng(opt.seed);
  std::vector<FieldTower::Spec> pts;
  std::vector<McEchelon> mces;
  std::vector<Gf2kField> fields;
  fields.reserve(opt.trials);
  for (int t = 0; t < opt.trials; ++t) {
    auto s = T.specialize(opt.k, rng);
    if (!s) break;
    pts.push_back(std::move(*s));
  }
  if (pts.empty()) return select_independent_exact(T, rows);
  for (auto& p : pts) mces.push_back({&p.F, {}});

  SelectResult res;
  res.mc_used = true;
  Echelon exact(T);          // holds the selected independent rows, lazily
  int exact_upto = 0;        // how many of res.independent are in `exact`
  auto sync_exact = [&]() {
    for (; exact_upto < (int)res.independent.size(); ++exact_upto) {
      if (!exact.insert(rows[res.independent[exact_upto]]))
        throw std::logic_error("certified-independent row reduced to zero");
    }
  };

  for (int i = 0; i < (int)rows.size(); ++i) {
    bool indep = false;
    std::vector<std::map<uint64_t, uint64_t>> specs(pts.size());
    bool spec_ok = true;
    for (size_t t = 0; t < pts.size(); ++t) {
      specs[t] = specialize_vec(T, rows[i], pts[t], spec_ok);
      if (!spec_ok) break;
    }
    if (spec_ok) {
      for (size_t t = 0; t < pts.size(); ++t)
        if (mces[t].reduces_to_nonzero(specs[t], /*do_insert=*/true)) indep = true;
    }
    if (indep) {
      // a nonzero specialized residual certifies exact independence
      res.independent.push_back(i);
      continue;
    }
    // claimed dependent (or unevaluable): verify exactly, witness required
    sync_exact();
    std::vector<Fe> w;
    if (auto r = exact.reduce(rows[i])) {
      res.dependent.push_back({i, std::move(*r)});
    } else {
      // false positive (or specialization failure on a tricky row):
      // redo the whole thing exactly — rare by construction
      return select_independent_exact(T, rows);
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// subspace intersection

std::vector<SparseVec> intersect_subspaces(const FieldTower& T,
                                           const std::vector<SparseVec>& U,
                                           const std::vector<SparseVec>& V) {
  Echelon ev(T);
  for (auto& v : V) ev.insert(v);
  // residuals of U mod V; dependencies among them are exactly the
  // combinations of U lying in V
  Echelon er(T);
  std::vector<int> kept;  // U-indices whose residuals were inserted
  std::vector<SparseVec> out;
  for (int i = 0; i < (int)U.size(); ++i) {
    SparseVec r = ev.residual(U[i]);
    if (r.empty()) {
      out.push_back(U[i]);
      continue;
    }
    std::vector<Fe> w;
    if (er.insert(r, &w)) {
      kept.push_back(i);
    } else {
      SparseVec x = U[i];
      for (size_t j = 0; j < w.size(); ++j) axpy(T, x, w[j], U[kept[j]]);
      if (!x.empty()) out.push_back(std::move(x));
    }
  }
  return out;
}

bool two_independent(const FieldTower& T, const std::vector<Fe>& elems,
                     const RankOptions& opt) {
  size_t n = elems.size();
  if (n > 20) throw std::length_error("two_independent: too many elements");
  if ((1ull << n) > (1ull << T.num_vars())) return false;  // [T:T^2] too small
  // subset products, built incrementally in mask order
  std::vector<Fe> prods(1ull << n);
  prods[0] = Fe::one();
  std::vector<SparseVec> rows(1ull << n);
  for (uint64_t m = 0; m < (1ull << n); ++m) {
    if (m) {
      int lo = __builtin_ctzll(m);
      prods[m] = T.mul(prods[m & (m - 1)], elems[lo]);
      if (prods[m].is_zero()) return false;
    }
    rows[m] = T.expand(prods[m]);
  }
  SelectResult sel = select_independent(T, rows, opt);
  return sel.dependent.empty();
}

std::optional<std::vector<Fe>> SquareSpan::add(const Fe& x) {
  SparseVec v = T_->expand(x);
  std::vector<Fe> w;
  if (ech_.insert(v, &w)) return std::nullopt;
  return w;
}

bool SquareSpan::contains(const Fe& x) const {
  return ech_.reduce(T_->expand(x)).has_value();
}

}  // namespace qf2
