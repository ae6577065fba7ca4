#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "qf2/qform.hpp"

using namespace qf2;

namespace {

std::shared_ptr<FieldTower> make_xy() {
  auto T = std::make_shared<FieldTower>();
  T->add_var("x");
  T->add_var("y");
  return T;
}

std::shared_ptr<FieldTower> make_xyz() {
  auto T = make_xy();
  T->add_var("z");
  return T;
}

}  // namespace

TEST_CASE("witt decomposition of quasilinear forms") {
  auto T = make_xy();
  Fe x = T->var(0), y = T->var(1);
  TowerPtr F = T;

  // 1*x + 1*y + 1*(x+y) = 0
  QForm phi{F, {x, y, T->add(x, y)}};
  WittQf w = witt_decompose_qf(phi);
  CHECK(w.i0 == 1);
  CHECK(w.anis.dim() == 2);

  QForm pf = pfister_qf(F, {x, y});  // <1,x,y,xy>
  CHECK(witt_decompose_qf(pf).i0 == 0);

  // over F(sqrt(x)) the same form collapses to half
  auto Lx = std::make_shared<FieldTower>(*T);
  Lx->add_sqrt(x);
  TowerPtr L = Lx;
  CHECK(witt_decompose_qf(scalar_extend(pf, L)).i0 == 2);
}

TEST_CASE("representation with witness") {
  auto T = make_xy();
  Fe x = T->var(0), y = T->var(1);
  TowerPtr F = T;
  QForm one_x{F, {Fe::one(), x}};
  auto w = represents(one_x, T->add(Fe::one(), x));
  REQUIRE(w);
  CHECK(T->equal((*w)[0], Fe::one()));
  CHECK(T->equal((*w)[1], Fe::one()));
  CHECK(!represents(one_x, y));
  // x^3 + y = x^2 * x + 1^2 * y
  QForm xy{F, {x, y}};
  auto w2 = represents(xy, T->add(T->mul(T->square(x), x), y));
  REQUIRE(w2);
  CHECK(T->equal((*w2)[0], x));
}

TEST_CASE("norm field and norm degree") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1), z = T->var(2);
  TowerPtr F = T;

  // <x,y,z>: N = F^2(xy, xz) since yz = (xy)(xz)/x^2
  NormData n1 = norm_data(QForm{F, {x, y, z}});
  CHECK(n1.lndeg == 2);

  NormData n2 = norm_data(pfister_qf(F, {x, y}));
  CHECK(n2.lndeg == 2);
  // normform of a quasi-Pfister form is itself: the sum collapses completely
  CHECK(witt_decompose_qf(perp(n2.normform, pfister_qf(F, {x, y}))).i0 == 4);

  CHECK(norm_data(QForm{F, {Fe::one(), x, y}}).lndeg == 2);
}

TEST_CASE("similarity form and divisibility") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1), z = T->var(2);
  TowerPtr F = T;

  SimData s1 = sim_data(pfister_qf(F, {x, y}));
  CHECK(s1.logdim == 2);  // Pfister forms are round: G = D

  SimData s2 = sim_data(QForm{F, {Fe::one(), x, y}});
  CHECK(s2.logdim == 0);  // G = F^2

  QForm t = tensor(pfister_qf(F, {x}), QForm{F, {Fe::one(), y, z}});
  CHECK(divisible_by(t, {x}));
  CHECK(divisible_by(pfister_qf(F, {x, y}), {x}));
  CHECK(!divisible_by(QForm{F, {Fe::one(), x, y}}, {x}));
}

TEST_CASE("quasi-Pfister neighbours") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1), z = T->var(2);
  TowerPtr F = T;
  CHECK(neighbour_test(QForm{F, {Fe::one(), x, y}}).is_neighbour);
  CHECK(!neighbour_test(QForm{F, {Fe::one(), x, y, z}}).is_neighbour);
  CHECK(neighbour_test(QForm{F, {x, y, z}}).is_neighbour);
}

TEST_CASE("scalar extension laws") {
  auto T = std::make_shared<FieldTower>();
  T->add_var("x");
  TowerPtr F = T;
  Fe x = T->var(0);
  QForm phi{F, {Fe::one(), x}};

  // purely transcendental: anisotropy preserved
  auto Tt = std::make_shared<FieldTower>(*T);
  Tt->add_var("t");
  CHECK(witt_decompose_qf(scalar_extend(phi, Tt)).i0 == 0);

  // inseparable quadratic: <1,x> collapses over F(sqrt(x))
  auto Tx = std::make_shared<FieldTower>(*T);
  Tx->add_sqrt(x);
  CHECK(witt_decompose_qf(scalar_extend(phi, Tx)).i0 == 1);
}

TEST_CASE("quadratic extension identity") {
  // i0 over F(sqrt(a)) = dim phi - dim anis(<<a>> tensor phi) / 2
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1), z = T->var(2);
  TowerPtr F = T;
  std::vector<QForm> catalog = {
      QForm{F, {Fe::one(), x, y}},
      QForm{F, {Fe::one(), x, y, z}},
      pfister_qf(F, {x, y}),
      QForm{F, {x, y, z, T->mul(x, y)}},
  };
  for (const Fe& a : {x, T->add(x, y), T->mul(y, z)}) {
    auto L = std::make_shared<FieldTower>(*T);
    L->add_sqrt(a);
    TowerPtr Lp = L;
    for (const QForm& phi : catalog) {
      int direct = witt_decompose_qf(scalar_extend(phi, Lp)).i0;
      int formula =
          phi.dim() - witt_decompose_qf(tensor(pfister_qf(F, {a}), phi)).anis.dim() / 2;
      CHECK(direct == formula);
    }
  }
}

TEST_CASE("lndeg lower bound") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1), z = T->var(2);
  TowerPtr F = T;
  for (const QForm& phi : {QForm{F, {Fe::one(), x, y}}, QForm{F, {x, y, z, T->mul(y, z)}},
                           pfister_qf(F, {x, y, z})}) {
    WittQf w = witt_decompose_qf(phi);
    int s = 0;
    while ((1 << (s + 1)) < w.anis.dim()) ++s;
    CHECK(norm_data(phi).lndeg >= s + 1);
  }
}
