#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "qgrowth/errors.hpp"
#include "qgrowth/finite_group.hpp"

namespace qgrowth {

namespace {

using ElementSet = std::vector<Permutation>;  // sorted

// Closure of a sorted element set with one extra element, inside a group
// whose full element list is known.  Plain BFS; sizes here are ≤ 1000.
ElementSet extend(const ElementSet& H, const Permutation& g) {
  std::unordered_set<Permutation, PermutationHash> seen(H.begin(), H.end());
  std::deque<Permutation> frontier;
  if (seen.insert(g).second) frontier.push_back(g);
  std::vector<Permutation> gens(H.begin(), H.end());
  gens.push_back(g);
  while (!frontier.empty()) {
    Permutation current = std::move(frontier.front());
    frontier.pop_front();
    for (const Permutation& s : gens) {
      Permutation next = s.compose(current);
      if (seen.insert(next).second) frontier.push_back(next);
      Permutation next2 = current.compose(s);
      if (seen.insert(next2).second) frontier.push_back(next2);
    }
  }
  ElementSet out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool set_contains(const ElementSet& H, const Permutation& p) {
  return std::binary_search(H.begin(), H.end(), p);
}

ElementSet conjugate_set(const ElementSet& H, const Permutation& g) {
  Permutation ginv = g.inverse();
  ElementSet out;
  out.reserve(H.size());
  for (const Permutation& h : H) {
    out.push_back(g.compose(h).compose(ginv));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy small generating set for a known element set.
std::vector<Permutation> small_generating_set(const ElementSet& H,
                                              std::size_t degree) {
  std::vector<Permutation> gens;
  ElementSet closed{Permutation::identity(degree)};
  for (const Permutation& h : H) {
    if (set_contains(closed, h)) continue;
    gens.push_back(h);
    closed = extend(closed, h);
    if (closed.size() == H.size()) break;
  }
  return gens;
}

}  // namespace

std::vector<FiniteGroup> all_subgroups_up_to_conjugacy(
    const FiniteGroup& G, std::uint64_t order_cap) {
  if (G.order() > order_cap) {
    throw LimitExceeded("subgroup enumeration capped at order " +
                        std::to_string(order_cap));
  }
  const std::vector<Permutation>& all = G.elements();
  std::size_t degree = G.degree();

  // Every subgroup arises by repeatedly adjoining one element, so a
  // breadth-first walk over ⟨H, g⟩ extensions from the trivial subgroup
  // visits all of them.  Extending by only the least member of each right
  // coset Hg prunes duplicates without losing any join.
  std::set<ElementSet> found;
  std::deque<ElementSet> queue;
  ElementSet trivial{Permutation::identity(degree)};
  found.insert(trivial);
  queue.push_back(trivial);
  while (!queue.empty()) {
    ElementSet H = std::move(queue.front());
    queue.pop_front();
    std::unordered_set<Permutation, PermutationHash> coset_seen;
    for (const Permutation& g : all) {
      if (set_contains(H, g)) continue;
      if (coset_seen.count(g)) continue;
      // mark the whole right coset Hg
      for (const Permutation& h : H) coset_seen.insert(h.compose(g));
      ElementSet J = extend(H, g);
      if (found.insert(J).second) queue.push_back(J);
    }
  }

  // Collapse conjugacy classes, keeping the lexicographically least element
  // set per class for deterministic output.
  std::set<ElementSet> remaining(found.begin(), found.end());
  std::vector<ElementSet> representatives;
  while (!remaining.empty()) {
    ElementSet rep = *remaining.begin();
    // orbit of the subgroup under conjugation by generators of G
    std::set<ElementSet> orbit{rep};
    std::deque<ElementSet> front{rep};
    while (!front.empty()) {
      ElementSet cur = std::move(front.front());
      front.pop_front();
      for (const Permutation& g : G.generators()) {
        ElementSet conj = conjugate_set(cur, g);
        if (orbit.insert(conj).second) front.push_back(conj);
      }
    }
    ElementSet least = *orbit.begin();
    representatives.push_back(least);
    for (const ElementSet& member : orbit) remaining.erase(member);
  }

  std::sort(representatives.begin(), representatives.end(),
            [](const ElementSet& a, const ElementSet& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });

  std::vector<FiniteGroup> out;
  out.reserve(representatives.size());
  for (const ElementSet& H : representatives) {
    out.push_back(
        FiniteGroup::from_generators(small_generating_set(H, degree), degree));
  }
  return out;
}

}  // namespace qgrowth
