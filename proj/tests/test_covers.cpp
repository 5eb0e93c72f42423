#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qgrowth/covers.hpp"
#include "qgrowth/errors.hpp"
#include "qgrowth/finite_group.hpp"

using namespace qgrowth;

namespace {

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

FiniteGroup cyc(std::size_t n) {
  std::string cycle = "(0";
  for (std::size_t i = 1; i < n; ++i) cycle += " " + std::to_string(i);
  cycle += ")";
  return FiniteGroup::from_generators({Permutation::from_cycles(cycle, n)}, n);
}

FiniteGroup trivial(std::size_t n) { return FiniteGroup::from_generators({}, n); }

// S2 wr S3 with its fiber congruence {0,1},{2,3},{4,5}.
FiniteCover wreath_cover() { return make_cover(wreath(sym(2), sym(3)), {0, 0, 1, 1, 2, 2}); }

// The 4-cycle covering the base swap; fibers {0,2} and {1,3}.
FiniteCover z4_cover() {
  return make_cover(FiniteGroup::from_generators({Permutation::from_cycles("(0 1 2 3)", 4)}, 4),
                    {0, 1, 0, 1});
}

}  // namespace

TEST_CASE("make_cover rejects projections that are not congruences") {
  // {0,1},{2} is not a block system of S3: the 3-cycle splits it.
  CHECK_THROWS_AS(make_cover(sym(3), {0, 0, 1}), InvalidCover);
  CHECK(validate_cover(wreath_cover()).empty());
  CHECK_NOTHROW(require_valid_cover(z4_cover()));

  FiniteCover broken = wreath_cover();
  broken.pi[0] = 1;
  CHECK_FALSE(validate_cover(broken).empty());
  CHECK_THROWS_AS(require_valid_cover(broken), InvalidCover);
}

TEST_CASE("base_image projects generators onto the induced base action") {
  const FiniteCover c = wreath_cover();
  CHECK(c.base.order() == 6);
  for (const auto& g : c.total.generators()) {
    const Permutation image = base_image(c, g);
    CHECK(image.degree() == 3);
    CHECK(c.base.contains(image));
  }
}

TEST_CASE("analyzing the wreath cover finds a strongly split letter kernel") {
  const CoverAnalysis a = analyze(wreath_cover());
  CHECK(a.kernel.order() == 8);  // S2 x S2 x S2
  CHECK_FALSE(a.trivial);
  CHECK_FALSE(a.strongly_trivial);
  REQUIRE(a.split.has_value());
  CHECK(*a.split);
  REQUIRE(a.strongly_split.has_value());
  CHECK(*a.strongly_split);
  CHECK_FALSE(a.linked);
  CHECK(a.finite_fiber_factors);

  REQUIRE(a.points.size() == 3);
  for (const auto& p : a.points) {
    CHECK(p.fiber.size() == 2);
    CHECK(p.fiber_group.order() == 2);
    CHECK(p.binding.order() == 2);
    CHECK(p.pointwise_binding.order() == 2);
    // The nested subgroup chain is normal at every point.
    CHECK(group_relations(p.pointwise_binding, p.binding).is_normal);
    CHECK(group_relations(p.binding, p.fiber_group).is_normal);
  }
}

TEST_CASE("analyzing the 4-cycle cover finds the nonsplit central kernel") {
  const CoverAnalysis a = analyze(z4_cover());
  CHECK(a.kernel.order() == 2);
  CHECK_FALSE(a.trivial);
  REQUIRE(a.split.has_value());
  CHECK_FALSE(*a.split);  // the only involution lies in the kernel
  CHECK(a.linked);        // yet no element moves a single fiber alone
  for (const auto& p : a.points) {
    CHECK(p.fiber_group.order() == 2);
    CHECK(p.pointwise_binding.order() == 1);  // no element moves one fiber only
    CHECK(p.binding.order() == 2);
  }
}

TEST_CASE("the identity congruence yields a trivial linked split cover") {
  const FiniteCover c = make_cover(sym(3), {0, 1, 2});
  const CoverAnalysis a = analyze(c);
  CHECK(a.kernel.order() == 1);
  CHECK(a.trivial);
  CHECK(a.strongly_trivial);
  REQUIRE(a.split.has_value());
  CHECK(*a.split);
  REQUIRE(a.strongly_split.has_value());
  CHECK(*a.strongly_split);
  CHECK(a.linked);
}

TEST_CASE("kappa plants a letter on selected fibers only") {
  // Point (f, a) is indexed a * fiber_size + f; sigma = (0 1) on base {1}
  // of three must swap points 2 and 3 and fix the rest.
  const Permutation k = kappa(Permutation::from_cycles("(0 1)", 2), {1}, 3);
  CHECK(k.degree() == 6);
  CHECK(k.apply(2) == 3);
  CHECK(k.apply(3) == 2);
  for (std::uint16_t p : {0, 1, 4, 5}) CHECK(k.apply(p) == p);

  const Permutation all = kappa(Permutation::from_cycles("(0 1)", 2), {0, 1, 2}, 3);
  CHECK(all.apply(0) == 1);
  CHECK(all.apply(4) == 5);
}

TEST_CASE("letter-coset kernels have order |H|^base * [L:H]") {
  CHECK(kernel_LH(2, sym(2), sym(2), 3).order() == 8);
  CHECK(kernel_LH(2, trivial(2), sym(2), 3).order() == 2);  // diagonal only
  CHECK(kernel_LH(3, cyc(3), sym(3), 2).order() == 18);     // 3^2 * 2

  // The full letterwise case coincides with the wreath cover's kernel.
  const FiniteGroup k = kernel_LH(2, sym(2), sym(2), 3);
  const auto rel = group_relations(k, analyze(wreath_cover()).kernel);
  CHECK(rel.is_subgroup);
  REQUIRE(rel.index.has_value());
  CHECK(*rel.index == 1);

  CHECK_THROWS_AS(kernel_LH(2, sym(2), sym(3), 3), DegreeMismatch);
}

TEST_CASE("cover JSON round trips") {
  const FiniteCover c = z4_cover();
  const std::string text = cover_to_json(c);
  const FiniteCover back = cover_from_json(text);
  CHECK(back.pi == c.pi);
  CHECK(back.total.order() == c.total.order());
  CHECK(cover_isomorphic(back, c));
  CHECK_THROWS_AS(cover_from_json("{\"total\":3}"), ParseError);
}

TEST_CASE("lifting the identity cover along a full letter descent builds the wreath") {
  const FiniteCover reference = make_cover(sym(2), {0, 1});
  DescentData d;
  // Fiber group of the reference is trivial, so phi maps S2 onto it with
  // kernel B = S2: every letter is invisible downstairs.
  d.entries.push_back({sym(2), sym(2), {Permutation::identity(1)}});
  d.entry_of = {0, 0};
  const FiniteCover lifted = build_lift(reference, d);
  CHECK(lifted.total.order() == 8);
  CHECK(lifted.total.degree() == 4);
  CHECK(cover_isomorphic(lifted, make_cover(wreath(sym(2), sym(2)), {0, 0, 1, 1})));
}

TEST_CASE("build_lift rejects inconsistent descent data and non-linked references") {
  const FiniteCover reference = make_cover(sym(2), {0, 1});
  DescentData d;
  d.entries.push_back({sym(2), sym(2), {Permutation::identity(1)}});
  d.entry_of = {0, 0};
  // Claiming a trivial B contradicts ker(phi) = S2.
  DescentData bad = d;
  bad.entries[0].B = trivial(2);
  CHECK_THROWS_AS(build_lift(reference, bad), InconsistentDescent);

  // The wreath cover has nontrivial pointwise bindings, hence is not linked.
  const auto [gt, wd] = decompose(wreath_cover());
  CHECK_THROWS_AS(build_lift(wreath_cover(), wd), InvalidCover);
  CHECK_NOTHROW(build_lift(gt, wd));
}

TEST_CASE("decomposing the wreath cover yields a linked one-point-fiber quotient") {
  const auto [gt, d] = decompose(wreath_cover());
  CHECK(gt.total.order() == 6);
  CHECK(gt.total.degree() == 3);
  CHECK(gt.pi == std::vector<std::uint16_t>{0, 1, 2});
  CHECK(analyze(gt).linked);
  REQUIRE(d.entries.size() == 1);  // a single base orbit
  CHECK(d.entries[0].B.order() == 2);
  CHECK(d.entries[0].F.order() == 2);
  CHECK(d.entry_of == std::vector<std::size_t>{0, 0, 0});
  CHECK(cover_isomorphic(build_lift(gt, d), wreath_cover()));
}

TEST_CASE("decomposing the trivial cover returns it unchanged") {
  const FiniteCover c = make_cover(sym(3), {0, 1, 2});
  const auto [gt, d] = decompose(c);
  CHECK(cover_isomorphic(gt, c));
  REQUIRE(d.entries.size() == 1);
  CHECK(d.entries[0].B.order() == 1);
  CHECK(d.entries[0].F.order() == 1);
}

TEST_CASE("decomposing the 4-cycle cover keeps the nonsplit twist upstairs") {
  const auto [gt, d] = decompose(z4_cover());
  // The pointwise bindings are trivial, so the quotient keeps fiber size 2
  // and all of the twist; the descent carries an isomorphism (B = 1).
  CHECK(gt.total.order() == 4);
  CHECK(gt.total.degree() == 4);
  REQUIRE(d.entries.size() == 1);
  CHECK(d.entries[0].B.order() == 1);
  CHECK(d.entries[0].F.order() == 2);
  CHECK(cover_isomorphic(build_lift(gt, d), z4_cover()));
}

TEST_CASE("descent data JSON round trips") {
  const auto [gt, d] = decompose(wreath_cover());
  const std::string text = descent_to_json(d);
  const DescentData back = descent_from_json(text);
  CHECK(back.entry_of == d.entry_of);
  REQUIRE(back.entries.size() == d.entries.size());
  CHECK(back.entries[0].F.order() == d.entries[0].F.order());
  CHECK(descent_to_json(back) == text);
  CHECK(cover_isomorphic(build_lift(gt, back), wreath_cover()));
  CHECK_THROWS_AS(descent_from_json("[1,2]"), ParseError);
}

TEST_CASE("truncated union groups compose part wreaths under the head action") {
  const FiniteGroup id0 = trivial(0), id1 = trivial(1);

  // Head swapping two singleton parts, t = 2: (Sym(2) x Sym(2)) . 2.
  const FiniteGroup swap_parts =
      g_cal(sym(2), {{{}, id0}, {{0}, id1}, {{1}, id1}}, 2);
  CHECK(swap_parts.order() == 8);
  CHECK(swap_parts.degree() == 4);

  // Identity head over a single replicated point: the copy symmetry alone.
  const FiniteGroup copies = g_cal(trivial(1), {{{}, id0}, {{0}, id1}}, 3);
  CHECK(copies.order() == 6);
  CHECK(copies.degree() == 3);

  // The distinguished part is kept once and never moves.
  const FiniteGroup pinned =
      g_cal(trivial(3), {{{0, 1}, trivial(2)}, {{2}, id1}}, 2);
  CHECK(pinned.degree() == 4);
  CHECK(pinned.order() == 2);
  for (const auto& e : pinned.elements()) {
    CHECK(e.apply(0) == 0);
    CHECK(e.apply(1) == 1);
  }
}

TEST_CASE("truncated union groups reject heads that break the part structure") {
  // The head swaps a part carrying S2 onto a part carrying the identity.
  const FiniteGroup head =
      FiniteGroup::from_generators({Permutation::from_cycles("(0 2)(1 3)", 4)}, 4);
  const std::vector<GCalPart> parts = {
      {{}, trivial(0)}, {{0, 1}, sym(2)}, {{2, 3}, trivial(2)}};
  CHECK_THROWS_AS(g_cal(head, parts, 1), NotNormalizing);
}

TEST_CASE("layered partition verification accepts the full wreath") {
  const FiniteGroup w = wreath(sym(2), sym(3));
  const auto delta = partition_from_classes({{0, 1}, {2, 3}, {4, 5}}, 6);
  const auto nabla = partition_from_classes({{0, 1, 2, 3, 4, 5}}, 6);
  const auto report = verify_omega_partition(w, {}, nabla, delta, 3);
  CHECK(report.passed);
  CHECK(report.failures.empty());

  // The class arithmetic is checked against t.
  const auto wrong_t = verify_omega_partition(w, {}, nabla, delta, 2);
  CHECK_FALSE(wrong_t.passed);
}

TEST_CASE("layered partition verification demands full copy symmetry") {
  // A cyclic top group moves the fibers but does not realize Sym(3).
  const FiniteGroup wz = wreath(sym(2), cyc(3));
  CHECK(wz.order() == 24);
  const auto delta = partition_from_classes({{0, 1}, {2, 3}, {4, 5}}, 6);
  const auto nabla = partition_from_classes({{0, 1, 2, 3, 4, 5}}, 6);
  const auto report = verify_omega_partition(wz, {}, nabla, delta, 3);
  CHECK_FALSE(report.passed);
  REQUIRE_FALSE(report.failures.empty());
  CHECK(report.failures[0].find("symmetric") != std::string::npos);

  // So does the identity group on discrete classes.
  const auto eq = partition_from_classes({{0}, {1}, {2}, {3}}, 4);
  const auto all = partition_from_classes({{0, 1, 2, 3}}, 4);
  CHECK_FALSE(verify_omega_partition(trivial(4), {}, all, eq, 4).passed);
}

TEST_CASE("layered partition verification checks invariance off K") {
  const FiniteGroup w = wreath(sym(2), sym(3));
  const auto nabla = partition_from_classes({{0}, {1, 2, 3, 4, 5}}, 6);
  const auto delta = partition_from_classes({{0}, {1}, {2, 3}, {4, 5}}, 6);
  // K = {0} is not invariant under the wreath: condition reported.
  const auto report = verify_omega_partition(w, {0}, nabla, delta, 3);
  CHECK_FALSE(report.passed);
  CHECK(report.failures[0].find("K is not invariant") != std::string::npos);
}

TEST_CASE("cover isomorphism distinguishes the twisted and split extensions") {
  const FiniteCover z4 = z4_cover();
  const FiniteCover k4 = make_cover(
      FiniteGroup::from_generators({Permutation::from_cycles("(0 2)(1 3)", 4),
                                    Permutation::from_cycles("(0 1)(2 3)", 4)},
                                   4),
      {0, 1, 0, 1});
  CHECK(z4.total.order() == k4.total.order());
  CHECK(cover_isomorphic(z4, z4));
  CHECK(cover_isomorphic(k4, k4));
  CHECK_FALSE(cover_isomorphic(z4, k4));
  CHECK_THROWS_AS(cover_isomorphic(z4, z4, /*search_cap=*/1), LimitExceeded);
}
