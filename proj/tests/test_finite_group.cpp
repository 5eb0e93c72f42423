#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

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

FiniteGroup alt(std::size_t n) {
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycles("(0 1 2)", n));
  if (n >= 4) {
    std::string cycle = n % 2 == 0 ? "(1" : "(0";
    for (std::size_t i = n % 2 == 0 ? 2 : 1; i < n; ++i)
      cycle += " " + std::to_string(i);
    cycle += ")";
    gens.push_back(Permutation::from_cycles(cycle, n));
  }
  return FiniteGroup::from_generators(std::move(gens), n);
}

const FiniteGroup kZ4 =
    FiniteGroup::from_generators({Permutation::from_cycles("(0 1 2 3)", 4)}, 4);

// x -> x+1 and x -> 2x on Z/5: the one-dimensional affine group.
const FiniteGroup kAffine5 = FiniteGroup::from_generators(
    {Permutation::from_cycles("(0 1 2 3 4)", 5),
     Permutation::from_cycles("(1 2 4 3)", 5)},
    5);

}  // namespace

TEST_CASE("closure computes orders") {
  CHECK(sym(3).order() == 6);
  CHECK(kAffine5.order() == 20);
  CHECK(FiniteGroup::from_generators({}, 4).order() == 1);
}

TEST_CASE("closure respects the order limit") {
  CHECK_THROWS_AS(sym(5).elements(/*order_limit=*/100), LimitExceeded);
}

TEST_CASE("element list is sorted and closed") {
  const FiniteGroup g = sym(3);
  const auto& els = g.elements();
  CHECK(std::is_sorted(els.begin(), els.end()));
  for (const Permutation& a : els)
    for (const Permutation& b : els) CHECK(g.contains(a * b));
}

TEST_CASE("orbit counts on subsets and tuples") {
  // Full symmetric group: one orbit of injective pairs, two equality
  // patterns of arbitrary pairs.
  const OrbitCounts s4 = orbit_counts(sym(4), 2);
  CHECK(s4.subsets == 1);
  CHECK(s4.injective == 1);
  CHECK(s4.tuples == 2);

  // Rotation only: the six 2-subsets fall into adjacent/opposite classes.
  CHECK(subset_orbit_count(kZ4, 2) == 2);

  for (std::size_t k = 0; k <= 5; ++k) CHECK(subset_orbit_count(alt(5), k) == 1);
}

TEST_CASE("subset bound and Stirling identity at small degree") {
  const std::vector<FiniteGroup> corpus = {sym(4), kZ4, alt(4), kAffine5};
  for (const FiniteGroup& g : corpus) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const OrbitCounts c = orbit_counts(g, n);
      std::uint64_t fact = 1;
      for (std::size_t i = 2; i <= n; ++i) fact *= i;
      CHECK(c.subsets <= c.injective);
      CHECK(c.injective <= fact * c.subsets);
    }
  }
}

TEST_CASE("high set transitivity") {
  CHECK(is_highly_set_transitive(sym(6)));
  CHECK_FALSE(is_highly_set_transitive(kZ4));
  CHECK(is_highly_set_transitive(kAffine5));
}

TEST_CASE("subgroup relations") {
  const GroupRelations a4s4 = group_relations(alt(4), sym(4));
  CHECK(a4s4.is_subgroup);
  CHECK(a4s4.is_normal);
  CHECK(a4s4.index == 2);

  const FiniteGroup point = FiniteGroup::from_generators(
      {Permutation::from_cycles("(0 1)", 3)}, 3);
  const GroupRelations rel = group_relations(point, sym(3));
  CHECK(rel.is_subgroup);
  CHECK_FALSE(rel.is_normal);
  CHECK(rel.index == 3);

  CHECK_THROWS_AS(group_relations(sym(3), sym(4)), DegreeMismatch);
}

TEST_CASE("direct product and wreath") {
  const FiniteGroup s2 = sym(2);
  const FiniteGroup p = direct_product(s2, s2);
  CHECK(p.degree() == 4);
  CHECK(p.order() == 4);
  CHECK(subset_orbit_count(p, 2) == 3);

  const FiniteGroup w = wreath(s2, sym(3));
  CHECK(w.degree() == 6);
  CHECK(w.order() == 48);
}

TEST_CASE("quotient by the fiber congruence") {
  const FiniteGroup w = wreath(sym(2), sym(3));
  const CongruencePartition fibers =
      partition_from_classes({{0, 1}, {2, 3}, {4, 5}}, 6);
  REQUIRE(is_congruence(w, fibers));
  const QuotientData q = quotient_by_congruence(w, fibers);
  CHECK(q.group.degree() == 3);
  CHECK(q.group.order() == 6);
  // The covering map commutes with every generator on every point.
  for (std::size_t i = 0; i < w.generators().size(); ++i) {
    for (std::uint16_t x = 0; x < 6; ++x) {
      CHECK(q.generator_images[i](fibers.class_of[x]) ==
            fibers.class_of[w.generators()[i](x)]);
    }
  }
  CHECK_THROWS_AS(
      quotient_by_congruence(w, partition_from_classes({{0, 2}, {1, 3}, {4, 5}}, 6)),
      NotACongruence);
}

TEST_CASE("congruence counting") {
  const FiniteGroup id2 = FiniteGroup::from_generators({}, 2);
  CHECK(congruence_count(id2).count == 2);
  CHECK(congruence_count(sym(3)).count == 2);

  // Filtering the 15 partitions of 4 points leaves 5 invariant ones:
  // equality, full, the two-block fiber split, and the two pairings
  // compatible with swapping inside each factor.
  const FiniteGroup s2xs2 = direct_product(sym(2), sym(2));
  CHECK(congruence_count(s2xs2).count == 5);
  // Coarser groups have fewer congruences.
  CHECK(congruence_count(s2xs2).count >= congruence_count(sym(4)).count);
}

TEST_CASE("congruence monotonicity under subgroups") {
  // G <= H on one domain implies every H-congruence is a G-congruence.
  const FiniteGroup h = sym(4);
  const std::vector<FiniteGroup> subs = {kZ4, alt(4),
                                         direct_product(sym(2), sym(2))};
  for (const FiniteGroup& g : subs)
    CHECK(congruence_count(g).count >= congruence_count(h).count);
}

TEST_CASE("projection sensitivity of small groups") {
  CHECK(m_sensitivity(sym(4), 2, 4).is_sensitive);
  // Index-2 subgroup: vacuously fine at depth 5 on 4 points (no injective
  // 5-tuples exist) and genuinely checked at depth 4.
  CHECK(m_sensitivity(alt(4), 4, 5).is_sensitive);
  CHECK(m_sensitivity(FiniteGroup::from_generators({}, 3), 2, 4).is_sensitive);
}

TEST_CASE("pair projections miss orbits of a 2-transitive group") {
  // A4 is transitive on injective pairs, so pair projections carry no
  // information, yet (0,1,2) and (0,1,3) lie in distinct orbits (the
  // aligning map would be the odd transposition (2 3)).
  const SensitivityReport r = m_sensitivity(alt(4), 2, 3);
  CHECK_FALSE(r.is_sensitive);
  REQUIRE(r.witness.has_value());
  // The witness is real: distinct orbits.
  CHECK(canonical_tuple(alt(4), r.witness->first) !=
        canonical_tuple(alt(4), r.witness->second));
}

TEST_CASE("subgroup classes up to conjugacy") {
  CHECK(all_subgroups_up_to_conjugacy(sym(3)).size() == 4);
  CHECK(all_subgroups_up_to_conjugacy(kZ4).size() == 3);

  // The affine group appears among the order-20 classes of S5.
  bool found = false;
  for (const FiniteGroup& h : all_subgroups_up_to_conjugacy(sym(5))) {
    if (h.order() != 20) continue;
    // Conjugates share their orbit counts, so this identifies the class.
    if (is_highly_set_transitive(h)) found = true;
  }
  CHECK(found);
}

TEST_CASE("group json round trip") {
  const FiniteGroup g = kAffine5;
  const FiniteGroup back = group_from_json(group_to_json(g));
  CHECK(back.degree() == g.degree());
  CHECK(back.order() == g.order());
  for (const Permutation& p : g.generators()) CHECK(back.contains(p));
}
