#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgrowth/permutation.hpp"

namespace qgrowth {

inline constexpr std::uint64_t kDefaultOrderLimit = 1'000'000;

// A permutation group of finite degree, held by generators.  The element
// list is computed at most once (breadth-first closure) and then shared by
// all copies; after that the value is immutable and safe to share across
// threads.  elements() is sorted lexicographically by image sequence.
class FiniteGroup {
 public:
  FiniteGroup();  // trivial group on 0 points

  static FiniteGroup from_generators(std::vector<Permutation> gens,
                                     std::size_t degree);
  // Closes eagerly; throws LimitExceeded past order_limit.
  static FiniteGroup closure(std::vector<Permutation> gens, std::size_t degree,
                             std::uint64_t order_limit = kDefaultOrderLimit);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  const std::vector<Permutation>& elements(
      std::uint64_t order_limit = kDefaultOrderLimit) const;
  std::uint64_t order(std::uint64_t order_limit = kDefaultOrderLimit) const;
  bool contains(const Permutation& p,
                std::uint64_t order_limit = kDefaultOrderLimit) const;
  bool closed() const;  // true once the element cache exists

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

struct GroupRelations {
  bool is_subgroup = false;
  bool is_normal = false;
  std::optional<std::uint64_t> index;  // |G| / |N| when N ≤ G
};

// How N sits inside G (same degree required).
GroupRelations group_relations(const FiniteGroup& N, const FiniteGroup& G,
                               std::uint64_t order_limit = kDefaultOrderLimit);

struct OrbitCounts {
  std::uint64_t subsets = 0;    // orbits on n-subsets
  std::uint64_t injective = 0;  // orbits on injective n-tuples
  std::uint64_t tuples = 0;     // orbits on all n-tuples
};

// Orbit counts of the componentwise action in all three senses at once.
// Representatives are lexicographically least in their orbit; counting runs
// a flood fill over the object lists in lexicographic order.
OrbitCounts orbit_counts(const FiniteGroup& G, std::size_t n,
                         std::uint64_t object_limit = 20'000'000);

std::uint64_t subset_orbit_count(const FiniteGroup& G, std::size_t n);
std::uint64_t injective_tuple_orbit_count(const FiniteGroup& G, std::size_t n);
std::uint64_t tuple_orbit_count(const FiniteGroup& G, std::size_t n);

// Lexicographically least representative of every orbit on injective
// n-tuples, in increasing order.
std::vector<std::vector<std::uint16_t>> injective_orbit_representatives(
    const FiniteGroup& G, std::size_t n);

// Lexicographically least member of the orbit of an n-subset (given sorted)
// or tuple.  Exposed for canonical-form tests and the sensitivity search.
std::vector<std::uint16_t> canonical_subset(const FiniteGroup& G,
                                            std::vector<std::uint16_t> subset);
std::vector<std::uint16_t> canonical_tuple(const FiniteGroup& G,
                                           std::vector<std::uint16_t> tuple);

// u_k(G) = 1 for every k up to the degree.
bool is_highly_set_transitive(const FiniteGroup& G);

// ---- constructions ----

// Acts on Dom(A) ⊔ Dom(B) (B's points shifted by |Dom(A)|).
FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B);
// Acts on Dom(G) × Dom(H) flattened as x + |Dom(G)|·y: one copy of G's
// generators in the fiber over 0 plus H's generators permuting fibers.
FiniteGroup wreath(const FiniteGroup& G, const FiniteGroup& H);
// Action restricted to an invariant point set (throws unless invariant).
FiniteGroup restriction(const FiniteGroup& G,
                        const std::vector<std::uint16_t>& points);
FiniteGroup pointwise_stabilizer(const FiniteGroup& G,
                                 const std::vector<std::uint16_t>& points);
FiniteGroup setwise_stabilizer(const FiniteGroup& G,
                               const std::vector<std::uint16_t>& points);

struct CongruencePartition {
  std::size_t degree = 0;
  std::vector<std::uint16_t> class_of;  // point → class index
  std::size_t class_count = 0;
};

CongruencePartition partition_from_classes(
    const std::vector<std::vector<std::uint16_t>>& classes, std::size_t degree);
bool is_congruence(const FiniteGroup& G, const CongruencePartition& E);

struct QuotientData {
  FiniteGroup group;                         // the action on classes
  CongruencePartition congruence;            // covering map: point → class
  std::vector<Permutation> generator_images; // μ(g) per generator of G
};

QuotientData quotient_by_congruence(const FiniteGroup& G,
                                    const CongruencePartition& E);

struct CongruenceReport {
  std::uint64_t count = 0;
  std::vector<CongruencePartition> congruences;
};

// All G-invariant partitions of the domain (includes equality and the full
// partition).  Enumerates restricted-growth strings; capped by degree.
CongruenceReport congruence_count(const FiniteGroup& G,
                                  std::size_t degree_cap = 10);

// ---- sensitivity ----

struct SensitivityReport {
  bool is_sensitive = true;
  std::size_t verified_to = 0;  // the n_max actually covered
  // Tuples in distinct orbits that no m-coordinate projection separates.
  std::optional<std::pair<std::vector<std::uint16_t>,
                          std::vector<std::uint16_t>>> witness;
};

// Checks: whenever two n-tuples (n ≤ n_max) lie in distinct orbits, some
// projection to m coordinates already separates them.
SensitivityReport m_sensitivity(const FiniteGroup& G, std::size_t m,
                                std::size_t n_max);

// One representative per conjugacy class of subgroups; |G| ≤ order cap.
std::vector<FiniteGroup> all_subgroups_up_to_conjugacy(
    const FiniteGroup& G, std::uint64_t order_cap = 1000);

// ---- serialization ----

std::string group_to_json(const FiniteGroup& G);
FiniteGroup group_from_json(const std::string& text);

}  // namespace qgrowth
