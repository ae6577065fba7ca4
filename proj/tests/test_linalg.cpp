#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "qf2/linalg.hpp"
#include "qf2/tower.hpp"

using namespace qf2;

namespace {

std::shared_ptr<FieldTower> xyz() {
  auto T = std::make_shared<FieldTower>();
  T->add_var("x");
  T->add_var("y");
  T->add_var("z");
  return T;
}

Fe rand_poly(std::mt19937_64& rng, int nvars) {
  Gf2Poly p = Gf2Poly::zero();
  int terms = 1 + (int)(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    Monomial m = Monomial::one();
    for (int d = (int)(rng() % 4); d > 0; --d)
      m = m * Monomial::var((int)(rng() % (uint64_t)nvars));
    p = p + Gf2Poly::from(m);
  }
  if (p.is_zero()) p = Gf2Poly::one();
  return Fe::of(Gf2RatFn::poly(p));
}

}  // namespace

TEST_CASE("echelon insert and reduce with witnesses") {
  auto T = xyz();
  Fe x = T->var(0), y = T->var(1);
  Echelon E(*T);
  SparseVec v1 = {{1, Fe::one()}};           // e_1
  SparseVec v2 = {{1, x}, {2, Fe::one()}};   // x e_1 + e_2
  CHECK(E.insert(v1));
  CHECK(E.insert(v2));
  CHECK(E.rank() == 2);
  // y*v1 + v2 must reduce with witness (y + x, 1) after elimination order
  SparseVec w = {{1, T->add(x, y)}, {2, Fe::one()}};
  auto combo = E.reduce(w);
  REQUIRE(combo);
  // recombine: sum combo_i * row_i == w
  SparseVec acc;
  axpy(*T, acc, (*combo)[0], v1);
  axpy(*T, acc, (*combo)[1], v2);
  for (auto& [m, c] : w) {
    auto it = acc.find(m);
    REQUIRE(it != acc.end());
    CHECK(T->equal(it->second, c));
  }
  CHECK(!E.reduce(SparseVec{{4, Fe::one()}}));  // independent direction
}

TEST_CASE("hybrid and exact row selection agree") {
  auto T = xyz();
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<SparseVec> rows(14);
    for (auto& v : rows)
      for (int k = 0; k < 3; ++k) v[rng() % 8] = rand_poly(rng, 3);
    // plant an exact dependency
    rows[13] = rows[1];
    SelectResult ex = select_independent_exact(*T, rows);
    RankOptions mc;
    mc.use_mc = true;
    SelectResult hy = select_independent(*T, rows, mc);
    CHECK(ex.independent == hy.independent);
    // every dependent witness recombines exactly
    for (auto& [ri, wit] : ex.dependent) {
      SparseVec acc;
      for (size_t j = 0; j < wit.size(); ++j)
        axpy(*T, acc, wit[j], rows[ex.independent[j]]);
      for (auto& [m, c] : rows[ri]) {
        auto it = acc.find(m);
        REQUIRE(it != acc.end());
        CHECK(T->equal(it->second, c));
      }
    }
  }
}

TEST_CASE("two-independence") {
  auto T = xyz();
  Fe x = T->var(0), y = T->var(1);
  CHECK(two_independent(*T, {x, y}));
  CHECK(!two_independent(*T, {x, y, T->mul(x, y)}));  // xy in F^2 * x * y
  CHECK(!two_independent(*T, {x, T->square(x)}));
  CHECK(two_independent(*T, {x, y, T->var(2)}));
}

TEST_CASE("square span membership") {
  auto T = xyz();
  Fe x = T->var(0), y = T->var(1);
  SquareSpan S(*T);
  CHECK(!S.add(x));
  CHECK(!S.add(y));
  CHECK(S.rank() == 2);
  // x^3 + y = x^2 * x + 1 * y
  Fe v = T->add(T->mul(T->square(x), x), y);
  auto wit = S.add(v);
  REQUIRE(wit);
  CHECK(T->equal((*wit)[0], x));
  CHECK(T->equal((*wit)[1], Fe::one()));
  CHECK(!S.contains(T->var(2)));
}

TEST_CASE("subspace intersection") {
  auto T = xyz();
  Fe x = T->var(0);
  SparseVec e1 = {{1, Fe::one()}}, e2 = {{2, Fe::one()}}, e4 = {{4, Fe::one()}};
  SparseVec e12 = {{1, Fe::one()}, {2, x}};
  auto I = intersect_subspaces(*T, {e1, e2}, {e12, e4});
  REQUIRE(I.size() == 1);  // span{e1,e2} meets span{e1+x e2, e4} in the line e1+x e2
  Echelon E(*T);
  E.insert(e12);
  CHECK(E.reduce(I[0]).has_value());
}
