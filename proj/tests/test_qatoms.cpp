#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qgrowth/errors.hpp"
#include "qgrowth/finite_group.hpp"
#include "qgrowth/qatoms.hpp"

using namespace qgrowth;

namespace {

FiniteGroup group3(const std::vector<std::string>& cycles) {
  std::vector<Permutation> gens;
  gens.reserve(cycles.size());
  for (const auto& c : cycles) gens.push_back(Permutation::from_cycles(c, 3));
  return FiniteGroup::from_generators(gens, 3);
}

FiniteGroup sym(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(Permutation::from_cycles("(0 1)", n));
  if (n >= 3) {
    std::string cycle = "(0";
    for (std::size_t i = 1; i < n; ++i) cycle += " " + std::to_string(i);
    cycle += ")";
    gens.push_back(Permutation::from_cycles(cycle, n));
  }
  return FiniteGroup::from_generators(std::move(gens), n);
}

const FiniteGroup kA3 = group3({"(0 1 2)"});
const FiniteGroup kS3 = group3({"(0 1 2)", "(0 1)"});

FiberCoverSpec atom(std::size_t fiber, FiniteGroup H, FiniteGroup L, QReduct base) {
  FiberCoverSpec spec;
  spec.fiber_size = fiber;
  spec.H = std::move(H);
  spec.L = std::move(L);
  spec.base = base;
  return spec;
}

bool has_violation(const FiberCoverSpec& spec, const std::string& needle) {
  for (const auto& v : validate_spec(spec))
    if (v.condition.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("base relation names round trip and reject junk") {
  for (QReduct b : {QReduct::Order, QReduct::Betw, QReduct::Cyc, QReduct::Sep, QReduct::Eq})
    CHECK(qreduct_from_string(to_string(b)) == b);
  CHECK(to_string(QReduct::Order) == "order");
  CHECK(to_string(QReduct::Eq) == "eq");
  CHECK_THROWS_AS(qreduct_from_string("circular"), ParseError);
  CHECK_THROWS_AS(qreduct_from_string(""), ParseError);
}

TEST_CASE("validate_spec accepts well-formed atoms") {
  CHECK(validate_spec(atom(2, sym(2), sym(2), QReduct::Order)).empty());

  FiberCoverSpec turned = atom(3, kA3, kS3, QReduct::Cyc);
  turned.turn = Permutation::from_cycles("(0 1)", 3);
  CHECK(validate_spec(turned).empty());
  CHECK(is_valid_spec(turned));

  FiberCoverSpec flipped = atom(3, kA3, kS3, QReduct::Betw);
  flipped.flip = Permutation::identity(3);
  CHECK(is_valid_spec(flipped));
}

TEST_CASE("validate_spec reports each well-formedness failure") {
  // Turn outside L: sigma = (0 1) is not in L = A3.
  FiberCoverSpec bad_turn = atom(3, kA3, kA3, QReduct::Cyc);
  bad_turn.turn = Permutation::from_cycles("(0 1)", 3);
  CHECK_FALSE(is_valid_spec(bad_turn));
  CHECK(has_violation(bad_turn, "sigma not in L"));

  // H not normal in L: <(0 1)> has three conjugates inside S3.
  CHECK(has_violation(atom(3, group3({"(0 1)"}), kS3, QReduct::Order), "normal"));

  // Decorations on bases that do not admit them.
  FiberCoverSpec eq_flip = atom(3, kA3, kA3, QReduct::Eq);
  eq_flip.flip = Permutation::identity(3);
  CHECK_FALSE(is_valid_spec(eq_flip));
  FiberCoverSpec order_turn = atom(3, kA3, kA3, QReduct::Order);
  order_turn.turn = Permutation::identity(3);
  CHECK_FALSE(is_valid_spec(order_turn));

  // Cyc and Sep require a turn.
  CHECK_FALSE(is_valid_spec(atom(3, kA3, kA3, QReduct::Cyc)));

  // Degree mismatch between fiber size and the letter groups.
  CHECK_FALSE(is_valid_spec(atom(4, kA3, kA3, QReduct::Order)));

  CHECK_THROWS_AS(require_valid(bad_turn), SpecInvalid);
  CHECK_NOTHROW(require_valid(atom(2, sym(2), sym(2), QReduct::Order)));
}

TEST_CASE("canonical_spec normalizes decorations to least coset representatives") {
  FiberCoverSpec a = atom(3, kA3, kS3, QReduct::Cyc);
  a.turn = Permutation::from_cycles("(0 1)", 3);
  FiberCoverSpec b = a;
  b.turn = Permutation::from_cycles("(0 2)", 3);  // same coset of H = A3
  FiberCoverSpec c = a;
  c.turn = Permutation::identity(3);  // the other coset

  CHECK(same_group(a, b));
  CHECK_FALSE(same_group(a, c));
  CHECK(same_group(a, a));

  // Both representatives collapse to the lexicographically least one.
  FiberCoverSpec ca = canonical_spec(a), cb = canonical_spec(b);
  REQUIRE(ca.turn.has_value());
  CHECK(ca.turn->to_cycles() == "(1 2)");
  CHECK(spec_to_json(ca) == spec_to_json(cb));

  // Flip cosets behave the same way on Betw.
  FiberCoverSpec f = atom(3, kA3, kS3, QReduct::Betw);
  f.flip = Permutation::identity(3);
  FiberCoverSpec g = f;
  g.flip = Permutation::from_cycles("(0 1 2)", 3);  // differs by an element of H
  CHECK(same_group(f, g));
}

TEST_CASE("spec JSON round trip preserves the group") {
  FiberCoverSpec spec = atom(3, kA3, kS3, QReduct::Sep);
  spec.flip = Permutation::identity(3);
  spec.turn = Permutation::from_cycles("(0 1)", 3);
  const std::string text = spec_to_json(spec);
  const FiberCoverSpec back = spec_from_json(text);
  CHECK(back == spec);
  CHECK(same_group(back, spec));
  CHECK(spec_to_json(back) == text);
  CHECK_THROWS_AS(spec_from_json("{\"fiber\":0}"), ParseError);
}

TEST_CASE("highly set-transitive catalog lists the known degrees") {
  const auto c4 = hst_catalog(4);
  REQUIRE(c4.size() == 2);
  CHECK(c4[0].order() == 24);  // S4
  CHECK(c4[1].order() == 12);  // A4

  const auto c5 = hst_catalog(5);
  REQUIRE(c5.size() == 3);
  std::multiset<std::uint64_t> orders5;
  for (const auto& g : c5) orders5.insert(static_cast<std::uint64_t>(g.order()));
  CHECK(orders5 == std::multiset<std::uint64_t>{120, 60, 20});  // S5, A5, AGL(1,5)

  const auto c6 = hst_catalog(6);
  REQUIRE(c6.size() == 3);
  std::multiset<std::uint64_t> orders6;
  for (const auto& g : c6) orders6.insert(static_cast<std::uint64_t>(g.order()));
  // S6, A6, and PGL(2,5) acting sharply 3-transitively on the 6-point line.
  CHECK(orders6 == std::multiset<std::uint64_t>{720, 360, 120});
  for (const auto& g : c6) CHECK(is_highly_set_transitive(g));

  const auto c9 = hst_catalog(9);
  REQUIRE(c9.size() == 4);
  std::multiset<std::uint64_t> orders9;
  for (const auto& g : c9) orders9.insert(static_cast<std::uint64_t>(g.order()));
  // S9, A9, and the two projective groups on the 9-point line.
  CHECK(orders9 == std::multiset<std::uint64_t>{362880, 181440, 504, 1512});

  for (const auto& g : c9) CHECK(is_highly_set_transitive(g));

  CHECK_THROWS_AS(hst_catalog(0), OutOfRange);
  CHECK_THROWS_AS(hst_catalog(13), OutOfRange);
}

TEST_CASE("atom catalog has the expected size per fiber") {
  // Counts fixed by enumerating the classification cases by hand:
  // F=1 is one atom per base; F=2 adds the two proper Eq pairs; F=3
  // splits 8 Eq pairs + 8 undecorated + 4 index-2 + 2 flip + 2 turn.
  CHECK(enumerate_S_catalog(1).size() == 5);
  CHECK(enumerate_S_catalog(2).size() == 7);
  CHECK(enumerate_S_catalog(3).size() == 24);
  CHECK(enumerate_S_catalog(4).size() == 52);
  CHECK_THROWS_AS(enumerate_S_catalog(0), OutOfRange);
  CHECK_THROWS_AS(enumerate_S_catalog(10), OutOfRange);
}

TEST_CASE("every catalog entry is a valid spec with a case label") {
  const std::set<std::string> labels = {"(i)", "(ii)", "(iii)", "(iv)", "(v)"};
  // Fiber 6 mixes the symmetric chain with the projective exception.
  CHECK(enumerate_S_catalog(6).size() == 28);
  for (std::size_t fiber : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                            std::size_t{4}, std::size_t{6}}) {
    for (const auto& entry : enumerate_S_catalog(fiber)) {
      CAPTURE(fiber);
      CAPTURE(spec_to_json(entry.spec));
      CHECK(validate_spec(entry.spec).empty());
      CHECK(labels.count(entry.item) == 1);
      CHECK(entry.spec.fiber_size == fiber);
      CHECK(entry.p_oligomorphic_family == (entry.spec.base == QReduct::Eq));
    }
  }
}

TEST_CASE("catalog entries are pairwise distinct groups") {
  for (std::size_t fiber : {2, 3}) {
    const auto entries = enumerate_S_catalog(fiber);
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        CAPTURE(spec_to_json(entries[i].spec));
        CAPTURE(spec_to_json(entries[j].spec));
        CHECK_FALSE(same_group(entries[i].spec, entries[j].spec));
      }
  }
}

TEST_CASE("fiber-2 catalog contains exactly the symmetric kernels and Eq pairs") {
  const auto entries = enumerate_S_catalog(2);
  std::size_t kernels = 0, eq = 0;
  bool has_order_kernel = false;
  for (const auto& entry : entries) {
    if (entry.spec.base == QReduct::Eq) {
      ++eq;
      CHECK(entry.item == "(i)");
    } else {
      ++kernels;
      CHECK(entry.item == "(ii)");
      CHECK(entry.spec.H.order() == 2);
      CHECK(entry.spec.L.order() == 2);
      if (entry.spec.base == QReduct::Order) has_order_kernel = true;
    }
  }
  CHECK(kernels == 4);
  CHECK(eq == 3);
  CHECK(has_order_kernel);
}

TEST_CASE("fiber-3 catalog covers all five classification cases") {
  std::map<std::string, std::size_t> by_item;
  for (const auto& entry : enumerate_S_catalog(3)) ++by_item[entry.item];
  CHECK(by_item["(i)"] == 8);    // H normal in L <= S3, four chains x bases: Eq pairs
  CHECK(by_item["(ii)"] == 8);   // S3 and A3 kernels over the four ordered bases
  CHECK(by_item["(iii)"] == 4);  // the (A3, S3) index-2 pair per base
  CHECK(by_item["(iv)"] == 2);   // odd flip over A3 on Betw and Sep
  CHECK(by_item["(v)"] == 2);    // turn outside A3 on Cyc and Sep
}

TEST_CASE("normal pair: kernel inside the index-2 extension") {
  const auto r =
      classify_normal_pair(atom(3, kA3, kA3, QReduct::Order), atom(3, kA3, kS3, QReduct::Order));
  CHECK(r.is_normal);
  REQUIRE(r.matched_case.has_value());
  CHECK(*r.matched_case == "(iii)");
  REQUIRE(r.quotient_iso_tag.has_value());
  CHECK(*r.quotient_iso_tag == "Z2");
  REQUIRE(r.quotient_group.has_value());
  CHECK(r.quotient_group->order() == 2);
}

TEST_CASE("normal pair: kernel inside the flip extension has Klein quotient") {
  FiberCoverSpec big = atom(3, kA3, kS3, QReduct::Betw);
  big.flip = Permutation::identity(3);
  const auto r = classify_normal_pair(atom(3, kA3, kA3, QReduct::Order), big);
  CHECK(r.is_normal);
  REQUIRE(r.matched_case.has_value());
  CHECK(*r.matched_case == "(iv)");
  REQUIRE(r.quotient_iso_tag.has_value());
  CHECK(*r.quotient_iso_tag == "Z2xZ2");
  REQUIRE(r.quotient_group.has_value());
  CHECK(r.quotient_group->order() == 4);
}

TEST_CASE("normal pair: every group is normal in itself with trivial quotient") {
  const FiberCoverSpec self = atom(3, kA3, kS3, QReduct::Order);
  const auto r = classify_normal_pair(self, self);
  CHECK(r.is_normal);
  REQUIRE(r.matched_case.has_value());
  CHECK(*r.matched_case == "(i)");
  REQUIRE(r.quotient_iso_tag.has_value());
  CHECK(*r.quotient_iso_tag == "Z1");
}

TEST_CASE("normal pair: mismatched data is rejected with a reason") {
  // Different base relations never nest.
  const auto r1 =
      classify_normal_pair(atom(3, kA3, kA3, QReduct::Order), atom(3, kA3, kS3, QReduct::Eq));
  CHECK_FALSE(r1.is_normal);
  REQUIRE(r1.note.has_value());

  // Matching Cyc bases but different turn cosets.
  FiberCoverSpec inner = atom(3, kA3, kA3, QReduct::Cyc);
  inner.turn = Permutation::identity(3);
  FiberCoverSpec outer = atom(3, kA3, kS3, QReduct::Cyc);
  outer.turn = Permutation::from_cycles("(0 1)", 3);
  const auto r2 = classify_normal_pair(inner, outer);
  CHECK_FALSE(r2.is_normal);
  REQUIRE(r2.note.has_value());
  CHECK(r2.note->find("turn") != std::string::npos);

  // Different fiber sizes are an error, not a verdict.
  CHECK_THROWS_AS(
      classify_normal_pair(atom(2, sym(2), sym(2), QReduct::Order), atom(3, kA3, kS3, QReduct::Order)),
      FiberMismatch);
}

TEST_CASE("normal pair: letter groups outside the kernel block normality") {
  // S3 letters inside the A3 kernel extension: not even a subgroup.
  const auto r =
      classify_normal_pair(atom(3, kS3, kS3, QReduct::Order), atom(3, kA3, kA3, QReduct::Order));
  CHECK_FALSE(r.is_normal);
}
