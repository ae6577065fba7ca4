#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "qf2/kato.hpp"

using namespace qf2;

namespace {

std::shared_ptr<FieldTower> make_xyz() {
  auto T = std::make_shared<FieldTower>();
  T->add_var("x");
  T->add_var("y");
  T->add_var("z");
  return T;
}

}  // namespace

TEST_CASE("differential") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1);

  // d(x^2 y) = x^2 dy
  DiffForm d1 = differential(*T, T->mul(T->square(x), y));
  DiffForm dy = differential(*T, y);
  REQUIRE(d1.coef.size() == 1);
  CHECK(T->equal(d1.coef.begin()->second, T->square(x)));
  CHECK(d1.coef.begin()->first == dy.coef.begin()->first);

  CHECK(differential(*T, T->square(T->add(x, y))).is_zero());

  // additivity and Leibniz via dlog: dlog(xy) = dlog x + dlog y
  DiffForm lhs = dlog(*T, T->mul(x, y));
  DiffForm rhs = add_forms(*T, dlog(*T, x), dlog(*T, y));
  CHECK(add_forms(*T, lhs, rhs).is_zero());
}

TEST_CASE("wedge products") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1);
  DiffForm dx = differential(*T, x), dy = differential(*T, y);
  CHECK(wedge(*T, dx, dx).is_zero());
  DiffForm w = wedge(*T, dx, dy);
  REQUIRE(w.coef.size() == 1);
  CHECK(w.coef.begin()->second.is_one());
  // (dx/x) ^ (dx/x + dy/y) = (1/(xy)) dx^dy
  DiffForm lx = dlog(*T, x);
  DiffForm s = add_forms(*T, lx, dlog(*T, y));
  DiffForm v = wedge(*T, lx, s);
  REQUIRE(v.coef.size() == 1);
  CHECK(T->equal(v.coef.begin()->second, T->inv(T->mul(x, y))));
}

TEST_CASE("e_n on Pfister combinations") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1), z = T->var(2);

  // e_1 <<x>> = dx/x
  CHECK(add_forms(*T, e_n(*T, {{Fe::one(), {x}}}), dlog(*T, x)).is_zero());
  // doubling kills the class
  CHECK(e_n(*T, {{Fe::one(), {x, y}}, {x, {x, y}}}).is_zero());
  // scalars are ignored, square factors on generators are ignored
  CHECK(e_n(*T, {{z, {x, y}}, {Fe::one(), {T->mul(x, T->square(z)), y}}}).is_zero());
  // nonzero on 2-independent tuples
  CHECK(!e_n(*T, {{Fe::one(), {x, y}}}).is_zero());
  CHECK(!e_n(*T, {{Fe::one(), {x, y, z}}}).is_zero());
}

TEST_CASE("I^{n+1} membership for presented combinations") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1);
  CHECK(in_I_next(*T, {{Fe::one(), {x}}, {Fe::one(), {x}}}));
  CHECK(!in_I_next(*T, {{Fe::one(), {x}}, {Fe::one(), {y}}}));
  // [<<x,y>>] + [<<x,xy>>] in I^3: dlog(xy) = dx/x + dy/y collapses the sum
  CHECK(in_I_next(*T, {{Fe::one(), {x, y}}, {Fe::one(), {x, T->mul(x, y)}}}));
}

TEST_CASE("additivity of e_n") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1), z = T->var(2);
  std::vector<PfisterTerm> a = {{Fe::one(), {x, y}}};
  std::vector<PfisterTerm> b = {{Fe::one(), {y, z}}, {Fe::one(), {x, z}}};
  std::vector<PfisterTerm> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  DiffForm sum = add_forms(*T, e_n(*T, a), e_n(*T, b));
  CHECK(add_forms(*T, e_n(*T, ab), sum).is_zero());
}

TEST_CASE("determinant pairing on even forms") {
  auto T = make_xyz();
  Fe x = T->var(0), y = T->var(1);
  // <a,b> contributes [<<ab>>] modulo I^2; e_1 = dlog(ab)
  Fe items[] = {x, y, T->add(x, y), T->mul(x, y)};
  Fe det = Fe::one();
  std::vector<PfisterTerm> comb;
  for (int i = 0; i < 4; i += 2) {
    Fe ab = T->mul(items[i], items[i + 1]);
    det = T->mul(det, ab);
    comb.push_back({items[i], {ab}});
  }
  CHECK(add_forms(*T, e_n(*T, comb), dlog(*T, det)).is_zero());
  CHECK(e_n(*T, comb).is_zero() == T->is_square(det));
}
