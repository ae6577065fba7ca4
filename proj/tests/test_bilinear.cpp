#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "qf2/bilinear.hpp"

using namespace qf2;

namespace {

std::shared_ptr<FieldTower> make_xyz() {
  auto T = std::make_shared<FieldTower>();
  T->add_var("x");
  T->add_var("y");
  T->add_var("z");
  return T;
}

Fe rand_poly(std::mt19937_64& rng, const FieldTower&) {
  Gf2Poly p = Gf2Poly::zero();
  for (int t = 0, k = 1 + (int)(rng() % 2); t < k; ++t) {
    Monomial m = Monomial::one();
    for (int d = (int)(rng() % 3); d > 0; --d) m = m * Monomial::var((int)(rng() % 3));
    p = p + Gf2Poly::from(m);
  }
  if (p.is_zero()) p = Gf2Poly::one();
  return Fe::of(Gf2RatFn::poly(p));
}

}  // namespace

TEST_CASE("witt reduction basics") {
  auto T = make_xyz();
  TowerPtr F = T;
  Fe x = T->var(0);

  // <a,a> is a metabolic plane
  WittB w1 = witt_reduce(BForm{F, {x, x}, 0});
  CHECK(w1.anis.dim() == 0);
  CHECK(w1.i_M == 1);
  CHECK(w1.i_H == 0);

  // <1, x, 1+x>: one metabolic plane, residue <x(1+x)> up to squares
  Fe ox = T->add(Fe::one(), x);
  BForm b{F, {Fe::one(), x, ox}, 0};
  WittB w2 = witt_reduce(b);
  CHECK(w2.i_W == 1);
  CHECK(w2.i_H == 0);
  REQUIRE(w2.anis.dim() == 1);
  CHECK(det_trivial(*T, T->mul(determinant_b(w2.anis), determinant_b(b))));

  // [b] + [b] = 0: reduction fully cancels
  BForm pf = pfister_b(F, {x, T->var(1)});
  WittB w3 = witt_reduce(perp_b(pf, pf));
  CHECK(w3.anis.dim() == 0);
  CHECK(w3.i_W == 4);
}

TEST_CASE("i0 of the quasilinear form equals i_W + i_H") {
  auto T = make_xyz();
  TowerPtr F = T;
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    BForm b{F, {}, (int)(rng() % 2)};
    for (int k = 0, d = 2 + (int)(rng() % 5); k < d; ++k)
      b.diag.push_back(rand_poly(rng, *T));
    WittB w = witt_reduce(b);
    CHECK(w.i0 == witt_decompose_qf(phi_of(b)).i0);
    CHECK(w.i0 == w.i_W + w.i_H);
    CHECK(w.anis.dim() + 2 * w.i_W == b.dim());
    CHECK(det_trivial(*T, T->mul(determinant_b(w.anis), determinant_b(b))));
  }
}

TEST_CASE("determinant") {
  auto T = make_xyz();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);
  CHECK(det_trivial(*T, determinant_b(pfister_b(F, {x, y}))));  // x*y*xy = (xy)^2
  BForm b{F, {Fe::one(), x, T->add(Fe::one(), x)}, 0};
  CHECK(!det_trivial(*T, determinant_b(b)));
  // <Y1,Y2,Y1Y2,Z1,Z2,Z1Z2> has square determinant
  Fe z = T->var(2);
  BForm alb{F, {x, y, T->mul(x, y), z, Fe::one(), z}, 0};
  CHECK(det_trivial(*T, determinant_b(alb)));
}

TEST_CASE("isometry") {
  auto T = make_xyz();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);
  Fe s = T->add(x, y);
  // <x,y> ~= <x+y, xy(x+y)>: same determinant class, sum reduces to zero
  BForm b1{F, {x, y}, 0};
  BForm b2{F, {s, T->mul(T->mul(x, y), s)}, 0};
  CHECK(isometric(b1, b2));
  CHECK(!isometric(BForm{F, {Fe::one(), x}, 0}, BForm{F, {Fe::one(), y}, 0}));
  CHECK(isometric(b1, b1));
  CHECK_THROWS(isometric(BForm{F, {x, x}, 0}, b1));  // isotropic input rejected
}

TEST_CASE("Pfister constructors") {
  auto T = make_xyz();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);
  BForm p = pfister_b(F, {x, y});
  REQUIRE(p.dim() == 4);
  CHECK(p.diag[0].is_one());
  CHECK(pure_pfister_b(F, {x, y}).dim() == 3);
  CHECK(pfister_b(F, {x}).dim() == 2);
}

TEST_CASE("subform lifting") {
  auto T = make_xyz();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);
  BForm b = pfister_b(F, {x, y});

  LiftResult r = lift_subform(b, QForm{F, {Fe::one(), x}});
  CHECK(r.c.dim() == 2);
  CHECK(r.comp.dim() == 2);
  CHECK(isometric(perp_b(r.c, r.comp), b));

  // v = e1 + e2 realizes 1+x inside <1,x,y>
  BForm c{F, {Fe::one(), x, y}, 0};
  LiftResult r2 = lift_subform(c, QForm{F, {T->add(Fe::one(), x)}});
  REQUIRE(r2.c.dim() == 1);
  CHECK(T->is_square(T->mul(r2.c.diag[0], T->add(Fe::one(), x))));

  // uniqueness: lifting the same values in permuted order gives isometric c
  QForm phi{F, {x, Fe::one()}};
  LiftResult r3 = lift_subform(b, phi);
  CHECK(isometric(r3.c, r.c));

  CHECK_THROWS(lift_subform(b, QForm{F, {T->var(2)}}));  // z not represented
}

TEST_CASE("Pfister factorization") {
  auto T = make_xyz();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1), z = T->var(2);

  PfisterFactorization f1 = pfister_factorize(pfister_b(F, {x, y}), {x, y});
  CHECK(f1.complete);
  REQUIRE(f1.terms.size() == 1);
  CHECK(f1.terms[0].first.is_one());

  // <<x>> tensor <1,y,z> into three <<x>>-multiples with scalars {1,y,z}
  BForm b = tensor_b(pfister_b(F, {x}), BForm{F, {Fe::one(), y, z}, 0});
  PfisterFactorization f2 = pfister_factorize(b, {x});
  CHECK(f2.complete);
  REQUIRE(f2.terms.size() == 3);
  BForm re{F, {}, 0};
  for (auto& [s, lift] : f2.terms) re = perp_b(re, lift);
  CHECK(isometric(re, b));
}

TEST_CASE("lift-class sums") {
  auto T = make_xyz();
  TowerPtr F = T;
  Fe x = T->var(0), y = T->var(1);
  BForm p = pfister_b(F, {x, y});
  LiftSum s1 = pfister_lift_sum(p, p, {x, y});
  CHECK(s1.anis.dim() == 0);
  // same lift up to squares
  BForm q = pfister_b(F, {T->mul(x, T->square(T->add(Fe::one(), y))), y});
  LiftSum s2 = pfister_lift_sum(p, q, {x, y});
  CHECK(s2.anis.dim() == 0);
}
