#include "qf2/quadric.hpp"

#include <stdexcept>

#include "qf2/bilinear.hpp"

namespace qf2 {

static std::string fresh_name(const FieldTower& T, const std::string& want) {
  std::string n = want;
  while (T.var_id(n) >= 0) n += "_";
  return n;
}

QuadricFF function_field(const QForm& phi, const RankOptions& opt) {
  WittQf wd = witt_decompose_qf(phi, opt);
  if (wd.anis.dim() < 2) throw std::domain_error("quadric not integral");
  const FieldTower& F = *phi.F;

  auto L = std::make_shared<FieldTower>(F);
  QuadricFF ff;
  ff.src = wd.anis;
  ff.pivot = wd.anis.diag[0];

  // c = a_1^{-1} (a_2 t_2^2 + ... + a_n t_n^2): a non-square whenever the
  // entries are F^2-independent, since a_1^{-1} a_2 is not a square.
  Fe c = Fe::zero();
  for (int i = 1; i < ff.src.dim(); ++i) {
    int v = L->add_var(fresh_name(*L, "t" + std::to_string(i + 1)));
    ff.t_vars.push_back(v);
    c = L->add(c, L->mul(ff.src.diag[i], L->square(L->var(v))));
  }
  c = L->mul(L->inv(ff.pivot), c);
  ff.c = c;

  // Splitting towers iterate this construction, so always leave headroom.
  L->set_depth_limit(L->depth() + 1);
  L->add_sqrt(c);
  ff.L = L;
  return ff;
}

int i0_over(const QForm& phi, const TowerPtr& L, const RankOptions& opt) {
  return witt_decompose_qf(scalar_extend(phi, L), opt).i0;
}

FirstJump i1_and_phi1(const QForm& phi, const RankOptions& opt) {
  FirstJump r;
  r.ff = function_field(phi, opt);
  WittQf up = witt_decompose_qf(scalar_extend(r.ff.src, r.ff.L), opt);
  r.i1 = up.i0;
  r.phi1 = up.anis;
  return r;
}

SplittingRecord splitting_sequence(const QForm& phi, int max_steps,
                                   const RankOptions& opt) {
  WittQf wd = witt_decompose_qf(phi, opt);
  if (wd.i0 != 0) throw std::invalid_argument("splitting_sequence: form must be anisotropic");

  SplittingRecord rec;
  QForm cur = wd.anis;
  rec.steps.push_back({phi.F, cur.dim(), 0,
                       cur.dim() > 0 ? norm_data(cur, opt).lndeg : 0});
  while (cur.dim() > 1 && (int)rec.steps.size() <= max_steps) {
    FirstJump j = i1_and_phi1(cur, opt);
    cur = j.phi1;
    rec.steps.push_back({cur.F, cur.dim(), j.i1, norm_data(cur, opt).lndeg});
  }
  rec.complete = cur.dim() <= 1;
  return rec;
}

CompSplit complementary_split(const std::vector<Fe>& eta_gens, const QForm& phi,
                              const RankOptions& opt) {
  QForm eta = pfister_qf(phi.F, eta_gens);
  if (eta.dim() - phi.dim() < 2)
    throw std::invalid_argument("complementary_split: codimension must be >= 2");
  if (witt_decompose_qf(eta, opt).i0 != 0)
    throw std::invalid_argument("complementary_split: eta must be anisotropic");

  // First lift under the deterministic lift_subform order; its complement is
  // the complementary form (no search over complements is needed).
  BForm b = pfister_b(phi.F, eta_gens);
  LiftResult lr = lift_subform(b, phi, opt);  // throws if phi is not a subform

  CompSplit out;
  out.psi = phi_of(lr.comp);
  out.ff = function_field(out.psi, opt);
  int half = eta.dim() / 2;  // 2^n for (n+1)-fold eta
  int i1_psi = i1_and_phi1(out.psi, opt).i1;
  out.check = i0_over(phi, out.ff.L, opt) - i1_psi - phi.dim() + half;
  return out;
}

}  // namespace qf2
