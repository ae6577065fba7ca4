#include "qf2/bilinear.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qf2 {

namespace {
void check_entries(const BForm& b) {
  for (auto& a : b.diag)
    if (a.is_zero()) throw std::invalid_argument("degenerate diagonal bilinear form");
}
}  // namespace

BForm perp_b(const BForm& a, const BForm& b) {
  BForm r = a;
  r.diag.insert(r.diag.end(), b.diag.begin(), b.diag.end());
  r.h_planes += b.h_planes;
  return r;
}

BForm tensor_b(const BForm& a, const BForm& b) {
  const FieldTower& T = *a.F;
  BForm r{a.F, {}, 0};
  for (auto& x : a.diag)
    for (auto& y : b.diag) r.diag.push_back(T.mul(x, y));
  // H tensor anything of dim d = d hyperbolic planes
  r.h_planes = a.h_planes * b.dim() + b.h_planes * (int)a.diag.size();
  return r;
}

BForm scaled_b(const FieldTower& T, const Fe& c, BForm a) {
  if (c.is_zero()) throw std::invalid_argument("scaling by zero");
  for (auto& x : a.diag) x = T.mul(c, x);
  return a;
}

BForm pfister_b(TowerPtr F, const std::vector<Fe>& gens) {
  QForm q = pfister_qf(F, gens);
  return BForm{std::move(q.F), std::move(q.diag), 0};
}

BForm pure_pfister_b(TowerPtr F, const std::vector<Fe>& gens) {
  QForm q = pure_pfister_qf(F, gens);
  return BForm{std::move(q.F), std::move(q.diag), 0};
}

BForm scalar_extend_b(const BForm& b, TowerPtr L) {
  if (!L->extends(*b.F)) throw std::invalid_argument("not an extension of the base field");
  return BForm{std::move(L), b.diag, b.h_planes};
}

QForm phi_of(const BForm& b) {
  QForm q{b.F, b.diag};
  for (int i = 0; i < b.h_planes; ++i) {
    q.diag.push_back(Fe::zero());
    q.diag.push_back(Fe::zero());
  }
  return q;
}

WittB witt_reduce(const BForm& b, const RankOptions& opt, bool want_trace) {
  check_entries(b);
  const FieldTower& T = *b.F;
  WittB out;
  std::vector<Fe> diag = b.diag;
  auto tr = [&](const std::string& s) {
    if (want_trace) out.trace.push_back(s);
  };

  // Defect index of phi_b on the way in (for the i0 = i_M + 2 i_H invariant).
  int rank0;
  {
    std::vector<SparseVec> rows;
    for (auto& a : diag) rows.push_back(T.expand(a));
    rank0 = (int)select_independent(T, rows, opt).independent.size();
  }
  out.i0 = (int)diag.size() - rank0 + 2 * b.h_planes;

  std::vector<Fe> m_scalars;
  for (;;) {
    std::vector<SparseVec> rows;
    rows.reserve(diag.size());
    for (auto& a : diag) rows.push_back(T.expand(a));
    SelectResult sel = select_independent(T, rows, opt);
    if (sel.dependent.empty()) break;

    // earliest dependency; support = witness entries + the dependent index
    auto& [k, w] = sel.dependent.front();
    std::map<int, Fe> lam;  // index in diag -> coefficient
    for (size_t j = 0; j < w.size(); ++j)
      if (!w[j].is_zero()) lam[sel.independent[j]] = w[j];
    lam[k] = Fe::one();

    while (lam.size() > 2) {
      // contract the two lowest-index support entries:
      // <a_i, a_j>_b ≃ <c, a_i a_j c>_b for represented c = l_i^2 a_i + l_j^2 a_j
      auto it = lam.begin();
      auto [i, li] = *it++;
      auto [j, lj] = *it;
      Fe c = T.add(T.mul(T.square(li), diag[i]), T.mul(T.square(lj), diag[j]));
      if (c.is_zero()) throw std::logic_error("two-term dependency inside contraction");
      if (want_trace) {
        std::ostringstream os;
        os << "contract (" << i << "," << j << "): <" << T.str(diag[i]) << ","
           << T.str(diag[j]) << "> ~ <" << T.str(c) << ", product>";
        tr(os.str());
      }
      Fe prod = T.mul(T.mul(diag[i], diag[j]), c);
      diag[i] = c;
      diag[j] = prod;
      lam.erase(j);
      lam[i] = Fe::one();
    }
    // two-term dependency: l_p^2 a_p = l_q^2 a_q, so <a_p, a_q> is M_{a_p}
    auto it = lam.begin();
    int p = it->first;
    int q = std::next(it)->first;
    m_scalars.push_back(diag[p]);
    if (want_trace) tr("split metabolic plane M_" + T.str(diag[p]));
    diag.erase(diag.begin() + q);
    diag.erase(diag.begin() + p);
  }

  out.anis = BForm{b.F, diag, 0};

  // Decide which metabolic planes are actually hyperbolic: M_a ⟂ <a> ≃
  // H ⟂ <a>, so a recorded scalar already represented by what remains makes
  // the plane hyperbolic.  Greedy in recording order keeps the invariant
  // "anis ⟂ <kept scalars> anisotropic".
  Echelon span(T);
  for (auto& a : diag) span.insert(T.expand(a));
  out.i_H = b.h_planes;
  for (auto& c : m_scalars) {
    if (span.insert(T.expand(c))) {
      out.m_scalars.push_back(c);
      ++out.i_M;
      if (want_trace) tr("keep M_" + T.str(c));
    } else {
      ++out.i_H;
      if (want_trace) tr("convert M_" + T.str(c) + " to H");
    }
  }
  out.i_W = out.i_M + out.i_H;
  if (out.i0 != out.i_M + 2 * out.i_H)
    throw std::logic_error("witt_reduce invariant i0 = i_M + 2 i_H violated");
  return out;
}

Fe determinant_b(const BForm& b) {
  const FieldTower& T = *b.F;
  Fe d = Fe::one();
  for (auto& a : b.diag) d = T.mul(d, a);
  return d;
}

bool det_trivial(const FieldTower& T, const Fe& d) { return T.is_square(d); }

bool isometric(const BForm& b, const BForm& c, const RankOptions& opt) {
  if (b.dim() != c.dim()) return false;
  if (b.h_planes || c.h_planes)
    throw std::invalid_argument("isometry test requires anisotropic forms");
  const FieldTower& T = *b.F;
  // anisotropy check = independence of the diagonals
  for (const BForm* f : {&b, &c}) {
    std::vector<SparseVec> rows;
    for (auto& a : f->diag) rows.push_back(T.expand(a));
    if (!select_independent(T, rows, opt).dependent.empty())
      throw std::invalid_argument("isometry test requires anisotropic forms");
  }
  return witt_reduce(perp_b(b, c), opt).anis.diag.empty();
}

// ---------------------------------------------------------------------------
// subform lifting

namespace {
// b(v, w) for coefficient vectors over the diagonal.
Fe gram(const FieldTower& T, const std::vector<Fe>& diag, const std::vector<Fe>& v,
        const std::vector<Fe>& w) {
  Fe s = Fe::zero();
  for (size_t l = 0; l < diag.size(); ++l)
    s = T.add(s, T.mul(T.mul(v[l], w[l]), diag[l]));
  return s;
}

// Orthogonalize vectors (assumed independent, with all nonzero self-values
// available thanks to anisotropy); returns diagonal entries, mutates vecs to
// the orthogonal basis.
std::vector<Fe> gram_schmidt(const FieldTower& T, const std::vector<Fe>& diag,
                             std::vector<std::vector<Fe>>& vecs) {
  std::vector<Fe> out;
  for (size_t t = 0; t < vecs.size(); ++t) {
    for (size_t s = 0; s < t; ++s) {
      Fe coef = T.div(gram(T, diag, vecs[t], vecs[s]), out[s]);
      for (size_t l = 0; l < diag.size(); ++l)
        vecs[t][l] = T.add(vecs[t][l], T.mul(coef, vecs[s][l]));
    }
    Fe q = gram(T, diag, vecs[t], vecs[t]);
    if (q.is_zero()) throw std::logic_error("isotropic vector while diagonalizing");
    out.push_back(std::move(q));
  }
  return out;
}
}  // namespace

LiftResult lift_subform(const BForm& b, const QForm& phi, const RankOptions& opt) {
  check_entries(b);
  if (b.h_planes) throw std::invalid_argument("lift_subform requires anisotropic b");
  const FieldTower& T = *b.F;
  QForm qb{b.F, b.diag};
  size_t n = b.diag.size();

  // One witness vector per entry of phi.  phi anisotropic + b anisotropic
  // make the v_k automatically independent: sum mu_k v_k = 0 would give
  // sum mu_k^2 e_k = 0.
  std::vector<std::vector<Fe>> vecs;
  for (auto& e : phi.diag) {
    auto w = represents(qb, e, opt);
    if (!w) throw std::invalid_argument("subform is not represented");
    vecs.push_back(std::move(*w));
  }
  std::vector<Fe> cdiag = gram_schmidt(T, b.diag, vecs);

  // complement = kernel of the k x n matrix M[t][l] = vecs[t][l] * a_l
  size_t k = vecs.size();
  std::vector<std::vector<Fe>> M(k, std::vector<Fe>(n));
  for (size_t t = 0; t < k; ++t)
    for (size_t l = 0; l < n; ++l) M[t][l] = T.mul(vecs[t][l], b.diag[l]);
  // column echelon bookkeeping for nullspace
  std::vector<int> pivot_of_row(k, -1);
  std::vector<bool> col_used(n, false);
  size_t rank = 0;
  for (size_t t = 0; t < k; ++t) {
    // eliminate with previous pivot rows
    for (size_t s = 0; s < t; ++s) {
      if (pivot_of_row[s] < 0) continue;
      Fe f = M[t][pivot_of_row[s]];
      if (f.is_zero()) continue;
      for (size_t l = 0; l < n; ++l) M[t][l] = T.add(M[t][l], T.mul(f, M[s][l]));
    }
    int piv = -1;
    for (size_t l = 0; l < n; ++l)
      if (!M[t][l].is_zero()) {
        piv = (int)l;
        break;
      }
    if (piv < 0) continue;
    Fe iv = T.inv(M[t][piv]);
    for (size_t l = 0; l < n; ++l) M[t][l] = T.mul(M[t][l], iv);
    pivot_of_row[t] = piv;
    col_used[piv] = true;
    ++rank;
  }
  if (rank != k) throw std::logic_error("lift witnesses not independent");
  std::vector<std::vector<Fe>> kernel;
  for (size_t free = 0; free < n; ++free) {
    if (col_used[free]) continue;
    std::vector<Fe> v(n, Fe::zero());
    v[free] = Fe::one();
    // back-substitute pivots top-down (rows are mutually reduced enough for
    // a simple sweep because each row is eliminated against earlier pivots;
    // do a full sweep to be safe)
    for (int t = (int)k - 1; t >= 0; --t) {
      if (pivot_of_row[t] < 0) continue;
      Fe val = Fe::zero();
      for (size_t l = 0; l < n; ++l)
        if ((int)l != pivot_of_row[t]) val = T.add(val, T.mul(M[t][l], v[l]));
      v[pivot_of_row[t]] = val;
    }
    kernel.push_back(std::move(v));
  }
  std::vector<Fe> compdiag = gram_schmidt(T, b.diag, kernel);

  LiftResult lr;
  lr.c = BForm{b.F, std::move(cdiag), 0};
  lr.comp = BForm{b.F, std::move(compdiag), 0};
  return lr;
}

// ---------------------------------------------------------------------------
// Pfister factorization

PfisterFactorization pfister_factorize(const BForm& b, const std::vector<Fe>& eta_gens,
                                       const RankOptions& opt, int budget) {
  check_entries(b);
  const FieldTower& T = *b.F;
  QForm eta = pfister_qf(b.F, eta_gens);
  int block = eta.dim();

  struct Frame {
    BForm rest;
    size_t next_candidate = 0;
  };
  PfisterFactorization best;
  best.residual = b;
  std::vector<Frame> stack{{b, 0}};
  std::vector<std::pair<Fe, BForm>> terms;
  int nodes = 0;

  while (!stack.empty()) {
    Frame& f = stack.back();
    if ((int)f.rest.diag.size() == 0) {
      // complete factorization
      PfisterFactorization r;
      r.terms = terms;
      r.residual = BForm{b.F, {}, 0};
      r.complete = true;
      return r;
    }
    if ((int)terms.size() > (int)best.terms.size() ||
        ((int)terms.size() == (int)best.terms.size() &&
         f.rest.diag.size() < best.residual.diag.size())) {
      best.terms = terms;
      best.residual = f.rest;
    }
    bool advanced = false;
    while (f.next_candidate < f.rest.diag.size() && nodes < budget) {
      Fe x = f.rest.diag[f.next_candidate++];
      ++nodes;
      if ((int)f.rest.diag.size() < block) break;
      QForm xeta = scaled(T, x, eta);
      // quick representability screen before committing to the lift
      QForm qrest{b.F, f.rest.diag};
      bool ok = true;
      for (auto& e : xeta.diag)
        if (!represents(qrest, e, opt)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      LiftResult lr;
      try {
        lr = lift_subform(f.rest, xeta, opt);
      } catch (const std::invalid_argument&) {
        continue;
      }
      terms.push_back({x, scaled_b(T, T.inv(x), lr.c)});
      stack.push_back({std::move(lr.comp), 0});
      advanced = true;
      break;
    }
    if (!advanced) {
      stack.pop_back();
      if (!terms.empty() && !stack.empty()) terms.pop_back();
      if (nodes >= budget) break;
    }
  }
  return best;  // partial
}

LiftSum pfister_lift_sum(const BForm& b, const BForm& c, const std::vector<Fe>& pi_gens,
                         const RankOptions& opt) {
  const FieldTower& T = *b.F;
  WittB w = witt_reduce(perp_b(b, c), opt);
  LiftSum out{std::move(w.anis), false};
  if (out.anis.diag.empty()) {
    out.in_lift_class = true;
    return out;
  }
  // scaled lift of pi: quasilinear form must be x * pf(pi_gens) for the
  // first diagonal entry x, i.e. same value set after scaling
  Fe x = out.anis.diag[0];
  QForm pi = pfister_qf(b.F, pi_gens);
  if (out.anis.dim() != pi.dim()) return out;
  SquareSpan span(T, opt);
  for (auto& p : pi.diag) span.add(T.mul(x, p));
  bool match = true;
  for (auto& a : out.anis.diag)
    if (!span.contains(a)) {
      match = false;
      break;
    }
  out.in_lift_class = match;
  return out;
}

}  // namespace qf2
