#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qgrowth/finite_group.hpp"
#include "qgrowth/qatoms.hpp"

namespace qgrowth {

// An abstract symmetry of length-m words: a permutation of the m letter
// positions plus one fiber permutation per position.  g sends the letter at
// position j, transformed by letter[j], to position position(j).  This is
// the finite shadow of a cover element acting on an m-point support.
struct WordSymmetry {
  Permutation position;
  std::vector<Permutation> letter;
};

bool operator==(const WordSymmetry& a, const WordSymmetry& b);

WordSymmetry ws_identity(std::size_t m, std::size_t fiber);
// Apply b first, then a.
WordSymmetry ws_compose(const WordSymmetry& a, const WordSymmetry& b);
WordSymmetry ws_inverse(const WordSymmetry& a);
// Faithful action on the m * fiber points (position j, fiber point p),
// flattened as j * fiber + p.
Permutation ws_as_points(const WordSymmetry& a, std::size_t fiber);

// The move generators of a spec at word length m: one per-letter generator
// of H for each position, the global L generators, flip, turn, and the
// adjacent transpositions when the base is Eq.
std::vector<WordSymmetry> word_move_symmetries(const FiberCoverSpec& spec,
                                               std::size_t m);

// Closure of the move symmetries in their faithful point action.
FiniteGroup word_symmetry_group(const FiberCoverSpec& spec, std::size_t m,
                                std::uint64_t order_limit = kDefaultOrderLimit);

// Structural order of that group: (number of realized position
// permutations) * |L : H*| * |H*|^m, where H* is the letter group of the
// canonical spec (the flip-turn defect already absorbed).
std::uint64_t word_symmetry_order(const FiberCoverSpec& spec, std::size_t m);

// Structural membership: decides g in the move group of the spec without
// enumerating it.  The position part must be realizable for the base; after
// peeling a realizing product of flip/turn moves, the letters must lie in a
// single coset of the canonical letter group with value in L.
bool word_symmetry_member(const WordSymmetry& g, const FiberCoverSpec& spec);

struct WordPairReport {
  bool is_subgroup = true;
  bool is_normal = true;
  std::string detail;  // first failure, empty when normal
};

// Finite cross-check of normality in the word model, at word lengths up to
// m_max: (1) the move group of N embeds in the move group of G, (2) its
// conjugates by G-moves stay inside it, (3) G-moves preserve N-orbit
// equivalence between two configurations embedded disjointly in one word
// (the part that sees conjugation by elements supported at one of the two
// configurations only).  Per-spec orbit tables are cached across calls.
// Throws SpecInvalid / FiberMismatch like classify_normal_pair.
class WordNormalityChecker {
 public:
  explicit WordNormalityChecker(std::size_t m_max = 4,
                                std::size_t state_cap = 10'000'000);
  WordPairReport check(const FiberCoverSpec& specN, const FiberCoverSpec& specG);

 private:
  struct FiberSpaces;
  struct SpecTables;
  const FiberSpaces& spaces_for(std::size_t fiber);
  SpecTables& tables_for(const FiberCoverSpec& spec);
  std::size_t m_max_;
  std::size_t state_cap_;
  std::map<std::size_t, std::shared_ptr<FiberSpaces>> spaces_;
  std::map<std::string, std::shared_ptr<SpecTables>> cache_;
};

}  // namespace qgrowth
