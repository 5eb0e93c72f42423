#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgrowth/finite_group.hpp"

namespace qgrowth {

// A finite cover: a group on X together with a projection onto base points
// whose fiber relation is a congruence of the total group, such that the
// induced base action is exactly `base`.
struct FiniteCover {
  FiniteGroup total;
  FiniteGroup base;
  std::vector<std::uint16_t> pi;  // point -> base point
};

// Structural problems, empty when the cover is valid.
std::vector<std::string> validate_cover(const FiniteCover& cover);
void require_valid_cover(const FiniteCover& cover);  // throws InvalidCover

// The base permutation induced by g; callers must hold a valid cover.
Permutation base_image(const FiniteCover& cover, const Permutation& g);

// Builds the cover with the given projection, deriving the base group as
// the induced image of `total`.  Throws InvalidCover if the fiber relation
// is not a congruence.
FiniteCover make_cover(const FiniteGroup& total,
                       const std::vector<std::uint16_t>& pi);

// {"total": group, "base": group, "pi": [class per point]}
std::string cover_to_json(const FiniteCover& cover);
FiniteCover cover_from_json(const std::string& text);

struct CoverPointAnalysis {
  std::vector<std::uint16_t> fiber;  // points of the fiber, ascending
  FiniteGroup fiber_group;           // fiber-stabilizing elements, restricted
  FiniteGroup binding;               // kernel elements, restricted
  FiniteGroup pointwise_binding;     // elements supported inside the fiber
};

struct CoverAnalysis {
  std::vector<CoverPointAnalysis> points;  // one per base point
  FiniteGroup kernel;                      // of the induced base homomorphism
  bool trivial = false;                    // kernel is trivial
  bool strongly_trivial = false;
  std::optional<bool> split;           // empty when the search bound was hit
  std::optional<bool> strongly_split;  // complement acting trivially on
                                       // every fiber it stabilizes
  bool linked = false;                 // every pointwise binding trivial
  bool finite_fiber_factors = true;
};

// Split is decided by exhaustive complement search when |total| <= 1000.
CoverAnalysis analyze(const FiniteCover& cover,
                      std::uint64_t order_limit = kDefaultOrderLimit);

// The permutation of fiber_size * base_size points acting as sigma on the
// fibers over `on_base` and as the identity elsewhere; point (f, a) is
// indexed as a * fiber_size + f.
Permutation kappa(const Permutation& sigma,
                  const std::vector<std::uint16_t>& on_base,
                  std::size_t base_size);

// The group of all letter patterns drawn from one H-coset of L, generated
// by single-point H letters and global L letters; order |H|^base * |L:H|.
FiniteGroup kernel_LH(std::size_t fiber_size, const FiniteGroup& H,
                      const FiniteGroup& L, std::size_t base_size);

// Per-orbit descent record: the new fiber carries F, phi maps F onto the
// reference cover's fiber group at the least orbit point with kernel B.
struct DescentEntry {
  FiniteGroup B;
  FiniteGroup F;
  std::vector<Permutation> phi;  // image of each generator of F
};

struct DescentData {
  std::vector<DescentEntry> entries;
  std::vector<std::size_t> entry_of;  // base point -> entry index
};

// The lift of a linked cover along descent data: the largest cover over the
// same base whose letters lie in F with phi-image realized by an element of
// the reference cover.  Its fiber group at every point is F and its
// pointwise binding group is B.  Throws InvalidCover when the reference
// cover is not linked, InconsistentDescent when phi is not a surjective
// homomorphism with kernel B onto the reference fiber group.
FiniteCover build_lift(const FiniteCover& gtilde, const DescentData& descent);

// Inverse construction: quotients every fiber by its pointwise binding
// group (smallest faithful coset action of degree <= the quotient order),
// yielding a linked cover and the descent data that rebuilds the original:
// build_lift(decompose(c)) is isomorphic to c as a cover.
std::pair<FiniteCover, DescentData> decompose(const FiniteCover& cover);

// {"entries":[{"B":<group>,"F":<group>,"phi":[[images]...]},...],
//  "entry_of":[...]}
std::string descent_to_json(const DescentData& d);
DescentData descent_from_json(const std::string& text);

// One part of a truncated union domain: the points it occupies inside the
// head group's domain, and the group acting there.
struct GCalPart {
  std::vector<std::uint16_t> points;
  FiniteGroup group;
};

// The truncated union group: part 0 kept once (its group must be the
// identity), every other part replicated t times with its full wreath
// Sym(t) copy action, plus diagonal lifts of the head group's generators.
// Throws NotNormalizing when a head generator fails to permute the parts or
// to conjugate part groups onto part groups.
FiniteGroup g_cal(const FiniteGroup& head, const std::vector<GCalPart>& parts,
                  std::size_t t);

struct OmegaPartitionReport {
  bool passed = true;
  std::vector<std::string> failures;
};

// Finite-t surrogate of the layered-partition conditions: K invariant, both
// partitions congruences off K, delta refining nabla, every nabla class a
// union of exactly t delta classes, and the supported subgroup on each
// nabla class inducing the full symmetric group on its delta classes.
OmegaPartitionReport verify_omega_partition(const FiniteGroup& G,
                                            const std::vector<std::uint16_t>& K,
                                            const CongruencePartition& nabla,
                                            const CongruencePartition& delta,
                                            std::size_t t);

// Cover isomorphism over the identity base map: a fiberwise bijection
// conjugating one total onto the other.  Exhaustive with a product cap.
bool cover_isomorphic(const FiniteCover& a, const FiniteCover& b,
                      std::uint64_t search_cap = 1'000'000);

}  // namespace qgrowth
