#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "qgrowth/errors.hpp"
#include "qgrowth/finite_group.hpp"
#include "qgrowth/qatoms.hpp"
#include "qgrowth/wordmodel.hpp"

using namespace qgrowth;

namespace {

FiniteGroup trivial(std::size_t n) { return FiniteGroup::from_generators({}, n); }

FiniteGroup swap2() {
  return FiniteGroup::from_generators({Permutation::from_cycles("(0 1)", 2)}, 2);
}

FiberCoverSpec atom(std::size_t fiber, FiniteGroup H, FiniteGroup L, QReduct base) {
  FiberCoverSpec spec;
  spec.fiber_size = fiber;
  spec.H = std::move(H);
  spec.L = std::move(L);
  spec.base = base;
  return spec;
}

FiberCoverSpec one_point(QReduct base) {
  FiberCoverSpec spec = atom(1, trivial(1), trivial(1), base);
  if (base == QReduct::Betw || base == QReduct::Sep) spec.flip = Permutation::identity(1);
  if (base == QReduct::Cyc || base == QReduct::Sep) spec.turn = Permutation::identity(1);
  return spec;
}

// Two-point fiber with full letter symmetry over the linear order; its
// configuration counts are the Fibonacci numbers.
FiberCoverSpec fib_spec() { return atom(2, swap2(), swap2(), QReduct::Order); }

std::vector<std::uint64_t> subset_counts(const FiberCoverSpec& spec, std::size_t n_max) {
  std::vector<std::uint64_t> u;
  for (std::size_t n = 0; n <= n_max; ++n) u.push_back(count_subset_orbits(spec, n));
  return u;
}

}  // namespace

TEST_CASE("word JSON round trips and rejects malformed text") {
  const Word w{{{0}, {0, 1}, {1}}};
  CHECK(word_to_json(w) == "[[0],[0,1],[1]]");
  CHECK(word_from_json(word_to_json(w)) == w);
  CHECK(word_from_json("[]") == Word{});
  CHECK_THROWS_AS(word_from_json("[[0,"), ParseError);
  CHECK_THROWS_AS(word_from_json("{\"a\":1}"), ParseError);
  CHECK(w.total_size() == 4);
}

TEST_CASE("canonical form is idempotent and constant on an orbit") {
  const FiberCoverSpec spec = fib_spec();
  const Word a{{{0}, {1}}}, b{{{1}, {0}}}, c{{{0}, {0}}};
  const Word ca = canonical_form(a, spec);
  CHECK(canonical_form(b, spec) == ca);   // letterwise swap relates a and b
  CHECK(canonical_form(c, spec) == ca);   // and c as well
  CHECK(canonical_form(ca, spec) == ca);  // idempotent on representatives

  // One-point fiber, no moves at all: every word is its own orbit, and all
  // length-m words coincide anyway.
  const FiberCoverSpec pt = one_point(QReduct::Order);
  const Word m3{{{0}, {0}, {0}}};
  CHECK(canonical_form(m3, pt) == m3);
}

TEST_CASE("canonical form groups words exactly as the flip move dictates") {
  // Trivial letter groups, order-reversing move swapping the two fiber
  // points: the reversal fixes ({0},{1}) and ({1},{0}) individually but
  // identifies ({0},{0}) with ({1},{1}).
  FiberCoverSpec spec = atom(2, trivial(2), trivial(2), QReduct::Betw);
  spec.flip = Permutation::from_cycles("(0 1)", 2);
  const Word w01{{{0}, {1}}}, w10{{{1}, {0}}}, w00{{{0}, {0}}}, w11{{{1}, {1}}};
  CHECK(canonical_form(w01, spec) == w01);
  CHECK(canonical_form(w10, spec) == w10);
  CHECK(canonical_form(w01, spec) != canonical_form(w10, spec));
  CHECK(canonical_form(w00, spec) == canonical_form(w11, spec));
  CHECK(canonical_form(w00, spec) == w00);
}

TEST_CASE("canonical form validates inputs and honors the state cap") {
  const FiberCoverSpec spec = fib_spec();
  const Word bad{{{0, 2}}};  // fiber point 2 outside a 2-point fiber
  CHECK_THROWS_AS(canonical_form(bad, spec), ValidationError);
  FiberCoverSpec invalid = spec;
  invalid.turn = Permutation::identity(2);  // turn is not allowed on Order
  CHECK_THROWS_AS(canonical_form(Word{{{0}}}, invalid), SpecInvalid);
  CHECK_THROWS_AS(count_subset_orbits(fib_spec(), 8, /*state_cap=*/2), LimitExceeded);
}

TEST_CASE("configuration counts of the symmetric two-point fiber are Fibonacci") {
  CHECK(subset_counts(fib_spec(), 6) ==
        std::vector<std::uint64_t>{1, 1, 2, 3, 5, 8, 13});
}

TEST_CASE("one-point fibers have a single configuration orbit over every base") {
  for (QReduct base : {QReduct::Order, QReduct::Betw, QReduct::Cyc, QReduct::Sep, QReduct::Eq}) {
    CAPTURE(to_string(base));
    CHECK(subset_counts(one_point(base), 5) ==
          std::vector<std::uint64_t>{1, 1, 1, 1, 1, 1});
  }
}

TEST_CASE("the equality base counts multisets of letter classes") {
  // Two points can share a fiber or occupy two interchangeable fibers.
  const FiberCoverSpec spec = atom(2, swap2(), swap2(), QReduct::Eq);
  CHECK(count_subset_orbits(spec, 2) == 2);
  CHECK(count_subset_orbits(spec, 0) == 1);
  CHECK(count_subset_orbits(spec, 1) == 1);
}

TEST_CASE("configuration counts satisfy the length-split recursion") {
  // Words of total size n split off a first letter of size i; counts obey
  // u_n = sum_i u_i(H) * u_{n-i} over the linear order.  With H = S2 the
  // letter counts are u_1(H) = u_2(H) = 1, so the sequence is Fibonacci.
  const auto u = subset_counts(fib_spec(), 8);
  const auto h = orbit_counts(swap2(), 2);
  CHECK(h.subsets == 1);
  CHECK(orbit_counts(swap2(), 1).subsets == 1);
  for (std::size_t n = 2; n <= 8; ++n) CHECK(u[n] == u[n - 1] + u[n - 2]);
}

TEST_CASE("order-reversing moves over trivial letter groups grow a distinct series") {
  FiberCoverSpec spec = atom(2, trivial(2), trivial(2), QReduct::Betw);
  spec.flip = Permutation::from_cycles("(0 1)", 2);
  // Frozen from the BFS word enumeration above (independent of the module
  // series fast paths, which do not cover decorated Betw atoms).
  CHECK(subset_counts(spec, 6) ==
        std::vector<std::uint64_t>{1, 1, 4, 6, 18, 35, 93});
}

TEST_CASE("separation atoms with full decorations count distinct necklace splits") {
  FiberCoverSpec spec = atom(2, swap2(), swap2(), QReduct::Sep);
  spec.flip = Permutation::identity(2);
  spec.turn = Permutation::identity(2);
  CHECK(subset_counts(spec, 6) ==
        std::vector<std::uint64_t>{1, 1, 2, 2, 3, 3, 5});
}

TEST_CASE("tuple orbit counts match the labeled enumeration") {
  const FiberCoverSpec pt = one_point(QReduct::Order);
  CHECK(count_tuple_orbits(pt, 2, /*injective=*/true) == 2);   // x<y, x>y
  CHECK(count_tuple_orbits(pt, 2, /*injective=*/false) == 3);  // plus x=y

  const FiberCoverSpec pteq = one_point(QReduct::Eq);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(count_tuple_orbits(pteq, n, true) == 1);

  // Injective counts sit between u_n and n!*u_n.
  const FiberCoverSpec fib = fib_spec();
  CHECK(count_tuple_orbits(fib, 1, true) == 1);
  CHECK(count_tuple_orbits(fib, 2, true) == 3);
  CHECK(count_tuple_orbits(fib, 3, true) == 12);
  CHECK(count_subset_orbits(fib, 2) <= count_tuple_orbits(fib, 2, true));
  CHECK(count_tuple_orbits(fib, 2, true) <= 2 * count_subset_orbits(fib, 2));
}

TEST_CASE("all-tuple counts decompose over equality patterns of the positions") {
  // o_n = sum_k S(n,k) * l_k; at n = 2 this is l_1 + l_2.
  for (const FiberCoverSpec& spec : {one_point(QReduct::Order), fib_spec()}) {
    const auto l1 = count_tuple_orbits(spec, 1, true);
    const auto l2 = count_tuple_orbits(spec, 2, true);
    CHECK(count_tuple_orbits(spec, 2, false) == l1 + l2);
  }
}

TEST_CASE("labeled canonical forms separate tuple orbits") {
  const FiberCoverSpec pt = one_point(QReduct::Order);
  LabeledWord xy{Word{{{0}, {0}}}, {{0, 0}, {1, 0}}};  // x before y
  LabeledWord yx{Word{{{0}, {0}}}, {{1, 0}, {0, 0}}};  // y before x
  const LabeledWord cx = canonical_form(xy, pt);
  CHECK(canonical_form(cx, pt) == cx);
  CHECK(canonical_form(xy, pt) != canonical_form(yx, pt));
}

TEST_CASE("projection sensitivity holds for the small atoms") {
  CHECK(atom_sensitivity(one_point(QReduct::Order), 4, 6).is_sensitive);
  CHECK(atom_sensitivity(fib_spec(), 8, 6).is_sensitive);
  CHECK(atom_sensitivity(one_point(QReduct::Eq), 2, 5).is_sensitive);

  const auto report = atom_sensitivity(fib_spec(), 8, 6);
  CHECK(report.verified_to == 6);
  CHECK_FALSE(report.witness.has_value());
}

TEST_CASE("move set acts on length-m words with the expected image") {
  // No moves at all: identity on the 9 words over {{0},{1},{0,1}}.
  const auto g0 = word_action_group(atom(2, trivial(2), trivial(2), QReduct::Order), 2);
  CHECK(g0.degree() == 9);
  CHECK(g0.order() == 1);

  // Single per-letter swap on length-1 words: {0} <-> {1}, {0,1} fixed.
  const auto g1 = word_action_group(fib_spec(), 1);
  CHECK(g1.degree() == 3);
  CHECK(g1.order() == 2);

  // Global-only swap: the diagonal move pairs ({0},{0}) with ({1},{1}).
  const auto g2 = word_action_group(atom(2, trivial(2), swap2(), QReduct::Order), 2);
  CHECK(g2.degree() == 9);
  CHECK(g2.order() == 2);

  CHECK_THROWS_AS(word_action_group(fib_spec(), 6, /*domain_cap=*/100), LimitExceeded);
}

TEST_CASE("word action of a kernel is normal inside its index-2 extension") {
  std::vector<Permutation> rot = {Permutation::from_cycles("(0 1 2)", 3)};
  std::vector<Permutation> all = {Permutation::from_cycles("(0 1 2)", 3),
                                  Permutation::from_cycles("(0 1)", 3)};
  const FiniteGroup A3 = FiniteGroup::from_generators(rot, 3);
  const FiniteGroup S3 = FiniteGroup::from_generators(all, 3);
  const FiberCoverSpec inner = atom(3, A3, A3, QReduct::Order);
  const FiberCoverSpec outer = atom(3, A3, S3, QReduct::Order);
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto rel = group_relations(word_action_group(inner, m), word_action_group(outer, m));
    CAPTURE(m);
    CHECK(rel.is_subgroup);
    CHECK(rel.is_normal);
  }
}
