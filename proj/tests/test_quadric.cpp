#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "qf2/quadric.hpp"

using namespace qf2;

namespace {

std::shared_ptr<FieldTower> make_xy() {
  auto T = std::make_shared<FieldTower>();
  T->add_var("x");
  T->add_var("y");
  return T;
}

}  // namespace

TEST_CASE("function field towers") {
  auto T = std::make_shared<FieldTower>();
  T->add_var("x");
  TowerPtr F = T;
  Fe x = T->var(0);

  // <1,x>: F(x, t2) with sqrt(x t2^2) adjoined
  QuadricFF ff = function_field(QForm{F, {Fe::one(), x}});
  CHECK(ff.L->num_vars() == 2);
  CHECK(ff.L->depth() == 1);
  CHECK(ff.t_vars.size() == 1);
  CHECK(ff.L->extends(*T));
  Fe t2 = ff.L->var(ff.t_vars[0]);
  CHECK(ff.L->equal(ff.c, ff.L->mul(x, ff.L->square(t2))));
  // the source form is isotropic over its own function field
  CHECK(i0_over(QForm{F, {Fe::one(), x}}, ff.L) == 1);

  // a cone uses the tower of its anisotropic part
  auto Txy = make_xy();
  TowerPtr Fxy = Txy;
  Fe y = Txy->var(1);
  QForm cone{Fxy, {x, y, Txy->add(x, y)}};
  QuadricFF ffc = function_field(cone);
  CHECK(ffc.src.dim() == 2);
  CHECK(ffc.t_vars.size() == 1);

  CHECK_THROWS_AS(function_field(QForm{F, {x}}), std::domain_error);
}

TEST_CASE("i0 over explicit towers") {
  auto T = make_xy();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);
  QForm pf = pfister_qf(F, {x, y});

  auto Lx = std::make_shared<FieldTower>(*T);
  Lx->add_sqrt(x);
  CHECK(i0_over(pf, Lx) == 2);

  CHECK(i0_over(pf, function_field(pf).L) == 2);  // quasi-Pfister: half splits

  auto Lt = std::make_shared<FieldTower>(*T);
  Lt->add_var("t");
  CHECK(i0_over(pf, Lt) == 0);  // purely transcendental
}

TEST_CASE("first Witt jump") {
  auto T = make_xy();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);
  CHECK(i1_and_phi1(pfister_qf(F, {x, y})).i1 == 2);
  CHECK(i1_and_phi1(QForm{F, {Fe::one(), x, y}}).i1 == 1);

  auto T3 = std::make_shared<FieldTower>(*T);
  int zid = T3->add_var("z");
  TowerPtr F3 = T3;
  FirstJump j = i1_and_phi1(QForm{F3, {Fe::one(), x, y, T3->var(zid)}});
  CHECK(j.i1 == 1);
  CHECK(j.phi1.dim() == 3);
}

TEST_CASE("splitting sequences") {
  auto T = make_xy();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);

  auto dims = [](const SplittingRecord& r) {
    std::vector<int> d;
    for (auto& s : r.steps) d.push_back(s.anis_dim);
    return d;
  };

  SplittingRecord r1 = splitting_sequence(pfister_qf(F, {x, y}));
  CHECK(r1.complete);
  CHECK(dims(r1) == std::vector<int>{4, 2, 1});

  SplittingRecord r2 = splitting_sequence(QForm{F, {Fe::one(), x, y}});
  CHECK(dims(r2) == std::vector<int>{3, 2, 1});

  SplittingRecord r3 = splitting_sequence(QForm{F, {Fe::one(), x}});
  CHECK(dims(r3) == std::vector<int>{2, 1});

  // lndeg drops by exactly 1 at each step
  for (size_t k = 1; k < r1.steps.size(); ++k)
    CHECK(r1.steps[k].lndeg == r1.steps[k - 1].lndeg - 1);

  CHECK_THROWS_AS(splitting_sequence(QForm{F, {x, x}}), std::invalid_argument);
}

TEST_CASE("complementary splitting") {
  auto T = make_xy();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);

  CompSplit c1 = complementary_split({x, y}, QForm{F, {Fe::one(), x}});
  CHECK(c1.psi.dim() == 2);
  CHECK(c1.check == 0);

  auto T3 = std::make_shared<FieldTower>(*T);
  Fe z = T3->var(T3->add_var("z"));
  TowerPtr F3 = T3;
  CompSplit c2 =
      complementary_split({x, y, z}, QForm{F3, {Fe::one(), x, y, z, T3->mul(x, y)}});
  CHECK(c2.psi.dim() == 3);
  CHECK(c2.check == 0);

  // codim 1 is rejected
  CHECK_THROWS_AS(complementary_split({x, y}, QForm{F, {Fe::one(), x, y}}),
                  std::invalid_argument);
}
