#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgrowth/finite_group.hpp"
#include "qgrowth/qatoms.hpp"

namespace qgrowth {

// Cap on BFS orbit closures over decorated words.
inline constexpr std::size_t kDefaultBfsCap = 10'000'000;

// The fiber contents of a finite support: one nonempty letter per support
// point, in increasing support order.  Each letter is a sorted list of
// distinct fiber points.
struct Word {
  std::vector<std::vector<std::uint8_t>> letters;
  std::size_t total_size() const;
};

bool operator==(const Word& a, const Word& b);
bool operator<(const Word& a, const Word& b);  // letterwise, point-list lex

// JSON array of sorted integer arrays, e.g. [[0],[0,1]].
std::string word_to_json(const Word& w);
Word word_from_json(const std::string& text);  // throws ParseError

// A word with tuple positions attached to its points: labeling[t] is the
// (letter index, fiber point) slot holding tuple position t.  For injective
// tuples the labeling is a bijection onto the slots of the word.
struct LabeledWord {
  Word word;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> labeling;
};

bool operator==(const LabeledWord& a, const LabeledWord& b);
bool operator<(const LabeledWord& a, const LabeledWord& b);

// Least word in the BFS closure of w under the move set of the spec
// (per-letter H, global L, flip, turn, shuffle-iff-Eq).  Two words have
// equal canonical forms iff the move group relates them.
// Throws SpecInvalid, ValidationError (word out of range), LimitExceeded.
Word canonical_form(const Word& w, const FiberCoverSpec& spec,
                    std::size_t state_cap = kDefaultBfsCap);
LabeledWord canonical_form(const LabeledWord& w, const FiberCoverSpec& spec,
                           std::size_t state_cap = kDefaultBfsCap);

// Number of orbits of n-point configurations (words of total size n);
// u_0 = 1 for the empty configuration.
std::uint64_t count_subset_orbits(const FiberCoverSpec& spec, std::size_t n,
                                  std::size_t state_cap = kDefaultBfsCap);

// Number of orbits of injective n-tuples (labeled words), or of all
// n-tuples (words of size k <= n carrying a surjective assignment of the
// n positions onto their slots).
std::uint64_t count_tuple_orbits(const FiberCoverSpec& spec, std::size_t n,
                                 bool injective,
                                 std::size_t state_cap = kDefaultBfsCap);

struct WordSensitivityReport {
  bool is_sensitive = true;
  std::size_t verified_to = 0;  // largest n actually covered
  // Two tuple configurations in distinct orbits all of whose m-position
  // projections agree, serialized as JSON.
  std::optional<std::pair<std::string, std::string>> witness;
};

// Checks the m-sensitivity property on the word model: for every n <= n_max,
// tuples in distinct orbits must be separated by some projection onto m
// increasing positions.
WordSensitivityReport atom_sensitivity(const FiberCoverSpec& spec,
                                       std::size_t m, std::size_t n_max,
                                       std::size_t state_cap = kDefaultBfsCap);

// The permutation action of the move set on all length-m words (arbitrary
// total size).  The domain is the lexicographically sorted word list; the
// returned group carries one generator per move.
// Throws LimitExceeded when (2^|F|-1)^m exceeds domain_cap.
FiniteGroup word_action_group(const FiberCoverSpec& spec, std::size_t m,
                              std::size_t domain_cap = 5000);

}  // namespace qgrowth
