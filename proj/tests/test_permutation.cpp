#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgrowth/errors.hpp"
#include "qgrowth/permutation.hpp"

using namespace qgrowth;

TEST_CASE("identity fixes every point") {
  const Permutation id = Permutation::identity(5);
  for (std::uint16_t x = 0; x < 5; ++x) CHECK(id(x) == x);
  CHECK(id.is_identity());
  CHECK(id.to_cycles() == "()");
}

TEST_CASE("cycle notation round trips") {
  const Permutation p = Permutation::from_cycles("(0 1 2)(3 4)", 5);
  CHECK(p(0) == 1);
  CHECK(p(1) == 2);
  CHECK(p(2) == 0);
  CHECK(p(3) == 4);
  CHECK(p(4) == 3);
  CHECK(p.to_cycles() == "(0 1 2)(3 4)");
  CHECK(Permutation::from_cycles(p.to_cycles(), 5) == p);
}

TEST_CASE("cycle parsing rejects malformed input") {
  CHECK_THROWS_AS(Permutation::from_cycles("(0 1", 3), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles("(0 0)", 3), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles("(0 7)", 3), ParseError);
}

TEST_CASE("composition applies the right factor first") {
  const Permutation a = Permutation::from_cycles("(0 1)", 3);
  const Permutation b = Permutation::from_cycles("(1 2)", 3);
  const Permutation ab = a * b;  // b first, then a
  CHECK(ab(1) == 2);  // b: 1->2, a: 2->2
  CHECK(ab(2) == 0);  // b: 2->1, a: 1->0
  CHECK(ab(0) == 1);
}

TEST_CASE("inverse and power satisfy the group laws") {
  const Permutation p = Permutation::from_cycles("(0 1 2 3 4)", 5);
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.power(5).is_identity());
  CHECK(p.power(-1) == p.inverse());
  CHECK(p.power(7) == p.power(2));
}

TEST_CASE("composition is associative") {
  const Permutation a = Permutation::from_cycles("(0 1)", 4);
  const Permutation b = Permutation::from_cycles("(1 2 3)", 4);
  const Permutation c = Permutation::from_cycles("(0 3)(1 2)", 4);
  CHECK(((a * b) * c) == (a * (b * c)));
}

TEST_CASE("padding extends with fixed points") {
  const Permutation p = Permutation::from_cycles("(0 1)", 2);
  const Permutation q = p.padded(4);
  CHECK(q.degree() == 4);
  CHECK(q(0) == 1);
  CHECK(q(2) == 2);
  CHECK(q(3) == 3);
}

TEST_CASE("ordering is lexicographic by image sequence") {
  const Permutation id = Permutation::identity(3);
  const Permutation swap01 = Permutation::from_cycles("(0 1)", 3);
  const Permutation swap12 = Permutation::from_cycles("(1 2)", 3);
  CHECK(id < swap12);
  CHECK(swap12 < swap01);
}
