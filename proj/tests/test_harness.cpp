#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qf2/harness.hpp"
#include "qf2/kato.hpp"

using namespace qf2;

TEST_CASE("gap form construction") {
  GapInstance g21 = build_gap_form(2, 1);
  CHECK(g21.form.dim() == 6);
  CHECK(det_trivial(*g21.field, determinant_b(g21.form)));  // Albert form
  CHECK(g21.cert.terms.size() == 2);
  // boundary i = n: two pure parts, dim 2^{n+1} - 2^n
  CHECK(build_gap_form(2, 2).form.dim() == 4);
  CHECK(build_gap_form(3, 2).form.dim() == 12);
  CHECK_THROWS_AS(build_gap_form(2, 3), std::invalid_argument);

  // the certificate is n-fold and matches the Witt class of the form
  for (auto& t : g21.cert.terms) CHECK(t.gens.size() == 2);
}

TEST_CASE("adding 2^n to a dimension witness") {
  DimWitness w = dim_witness(2, 6);
  REQUIRE(w.reachable);
  DimWitness w10 = add_2n(w);
  CHECK(w10.dim == 10);
  CHECK(w10.form.dim() == 10);
  CHECK(w10.cert.terms.size() == w.cert.terms.size() + 1);
  CHECK(add_2n(w10).dim == 14);
}

TEST_CASE("optimality construction") {
  OptimalityInstance oi = build_optimality_form(3, 2, 0, 0);
  CHECK(oi.predicted_dim == 20);
  CHECK(oi.w.dim == 20);
  CHECK(oi.predicted_lndeg == 8);
  CHECK(oi.lndeg == 8);

  OptimalityInstance o2 = build_optimality_form(2, 1, 0, 0);
  CHECK(o2.w.dim == 10);
  CHECK(o2.predicted_dim == 10);

  CHECK(build_optimality_form(3, 1, 1, 0).w.dim == 20);
  CHECK_THROWS_AS(build_optimality_form(3, 3, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_optimality_form(3, 1, 2, 1), std::invalid_argument);
}

TEST_CASE("dimension witnesses") {
  CHECK(dim_witness(2, 8).reachable);
  CHECK(dim_witness(2, 8).form.dim() == 8);
  CHECK(dim_witness(2, 10).form.dim() == 10);
  CHECK(dim_witness(3, 20).form.dim() == 20);
  CHECK(dim_witness(2, 26).form.dim() == 26);  // closure under +2^n
  CHECK(!dim_witness(2, 2).reachable);         // below the gap theorem range
  CHECK_THROWS_AS(dim_witness(2, 7), std::invalid_argument);
}

TEST_CASE("Albert decomposition in dimension 6") {
  GapInstance g = build_gap_form(2, 1);
  AlbertDecomposition d = albert_decompose(g.form, 2, &g.cert);
  CHECK(d.verified);
  CHECK(d.c_gens.empty());
  CHECK(d.d_entries.size() == 6);

  // nontrivial determinant is rejected as not in I^2
  auto& T = *g.field;
  BForm bad = g.form;
  bad.diag[0] = T.mul(bad.diag[0], T.var(0));
  if (witt_reduce(bad).anis.dim() == 6)
    CHECK_THROWS_AS(albert_decompose(bad, 2), std::invalid_argument);
}

TEST_CASE("Albert decomposition in dimension 12") {
  GapInstance g = build_gap_form(3, 2);
  AlbertDecomposition d = albert_decompose(g.form, 3, &g.cert);
  CHECK(d.verified);
  CHECK(d.c_gens.size() == 1);
  CHECK(d.d_entries.size() == 6);
  // reassembly really is isometric
  BForm re = tensor_b(pfister_b(g.field, d.c_gens), BForm{g.field, d.d_entries, 0});
  CHECK(isometric(re, g.form));
  CHECK(det_trivial(*g.field, determinant_b(BForm{g.field, d.d_entries, 0})));

  CHECK_THROWS_AS(albert_decompose(g.form, 3, nullptr), std::invalid_argument);
}

TEST_CASE("Pfister structure recovery") {
  auto T = std::make_shared<FieldTower>();
  Fe x = T->var(T->add_var("x")), y = T->var(T->add_var("y")), z = T->var(T->add_var("z"));
  TowerPtr F = T;
  BForm b = scaled_b(*T, x, pfister_b(F, {y, z}));
  auto ps = recover_pfister_structure(b, 2);
  REQUIRE(ps);
  CHECK(isometric(scaled_b(*T, ps->scale, pfister_b(F, ps->gens)), b));
  // a non-Pfister class is not recovered
  BForm c{F, {Fe::one(), x, y, T->mul(T->add(Fe::one(), x), z)}, 0};
  REQUIRE(witt_reduce(c).anis.dim() == 4);
  CHECK(!recover_pfister_structure(c, 2));
}

TEST_CASE("suite plumbing") {
  auto names = suite_names();
  CHECK(names.size() == 10);
  SuiteReport r = run_suite("construction", 0);
  CHECK(r.ok());
  CHECK(r.passed == 6);
  CHECK(r.doc["suite"] == "construction");
  // determinism (timings aside)
  SuiteReport r2 = run_suite("construction", 0);
  REQUIRE(r.doc["cases"].size() == r2.doc["cases"].size());
  for (size_t k = 0; k < r.doc["cases"].size(); ++k) {
    CHECK(r.doc["cases"][k]["name"] == r2.doc["cases"][k]["name"]);
    CHECK(r.doc["cases"][k]["data"] == r2.doc["cases"][k]["data"]);
  }
  CHECK_THROWS_AS(run_suite("bogus"), std::invalid_argument);
}
