#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qf2/parse.hpp"

using namespace qf2;

TEST_CASE("tower descriptors round-trip") {
  for (const char* d : {"F2(x,y)", "F2(x); t:trans", "F2(x,y); sqrt:x",
                        "F2(x); t:trans; sqrt:x*t^2", "F2(x,y); sqrt:x; s:trans"}) {
    auto T = parse_tower(d);
    CHECK(parse_tower(T->descriptor())->descriptor() == T->descriptor());
  }
  CHECK_THROWS_AS(parse_tower("F2(x,y); sqrt:x^2"), std::exception);  // square
  CHECK_THROWS_AS(parse_tower("Q(x)"), ParseError);
}

TEST_CASE("element expressions") {
  auto T = parse_tower("F2(x,y); sqrt:x");
  Fe a = parse_elem(*T, "x*y + 1");
  CHECK(T->equal(a, T->add(T->mul(T->var(0), T->var(1)), Fe::one())));
  Fe b = parse_elem(*T, "(x+y)^3 / y");
  Fe xy = T->add(T->var(0), T->var(1));
  CHECK(T->equal(b, T->div(T->mul(T->square(xy), xy), T->var(1))));
  // the adjoined root is usable by name
  Fe r = parse_elem(*T, "s1");
  CHECK(T->equal(T->square(r), T->var(0)));
  // str round-trips
  for (const Fe& e : {a, b, r, T->add(r, T->var(1))})
    CHECK(T->equal(parse_elem(*T, T->str(e)), e));
  CHECK_THROWS_AS(parse_elem(*T, "w + 1"), ParseError);
  CHECK_THROWS_AS(parse_elem(*T, "x +"), ParseError);
}

TEST_CASE("form expressions") {
  auto T = parse_tower("F2(x,y,z)");
  CHECK(parse_qform(T, "<1, x, y>").dim() == 3);
  CHECK(parse_qform(T, "pf(x,y)").dim() == 4);
  CHECK(parse_qform(T, "pure pf(x,y)").dim() == 3);
  CHECK(parse_qform(T, "pf(x) perp <z>").dim() == 3);
  // tensor binds tighter than perp
  CHECK(parse_qform(T, "pf(x) tensor <1,y> perp <z>").dim() == 5);
  CHECK(parse_qform(T, "pf(x) tensor (<1,y> perp <z>)").dim() == 6);

  QForm s = parse_qform(T, "x * pf(y)");
  REQUIRE(s.dim() == 2);
  CHECK(T->equal(s.diag[0], T->var(0)));
  QForm s2 = parse_qform(T, "(x+y) * <1, z>");
  CHECK(T->equal(s2.diag[0], T->add(T->var(0), T->var(1))));

  BForm b = parse_bform(T, "pf(x,y) perp <z>");
  CHECK(b.h_planes == 0);
  CHECK(b.dim() == 5);

  CHECK_THROWS_AS(parse_qform(T, "<x,,y>"), ParseError);
  CHECK_THROWS_AS(parse_bform(T, "<x, 0>"), ParseError);  // zero entry
  CHECK_THROWS_AS(parse_qform(T, "pf()"), ParseError);
}
