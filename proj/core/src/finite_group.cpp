#include "qgrowth/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "qgrowth/errors.hpp"

namespace qgrowth {

struct FiniteGroup::Cache {
  std::once_flag once;
  std::vector<Permutation> elements;
  bool computed = false;
};

FiniteGroup::FiniteGroup() : degree_(0), cache_(std::make_shared<Cache>()) {}

FiniteGroup FiniteGroup::from_generators(std::vector<Permutation> gens,
                                         std::size_t degree) {
  for (const Permutation& g : gens) {
    if (g.degree() != degree) {
      throw DegreeMismatch("generator degree differs from stated degree");
    }
  }
  FiniteGroup G;
  G.degree_ = degree;
  // Drop identity generators and duplicates; keeps closure loops tight.
  std::vector<Permutation> kept;
  for (Permutation& g : gens) {
    if (g.is_identity()) continue;
    if (std::find(kept.begin(), kept.end(), g) == kept.end()) {
      kept.push_back(std::move(g));
    }
  }
  G.generators_ = std::move(kept);
  return G;
}

FiniteGroup FiniteGroup::closure(std::vector<Permutation> gens,
                                 std::size_t degree,
                                 std::uint64_t order_limit) {
  FiniteGroup G = from_generators(std::move(gens), degree);
  G.elements(order_limit);
  return G;
}

namespace {

std::vector<Permutation> close_generators(
    const std::vector<Permutation>& gens, std::size_t degree,
    std::uint64_t order_limit) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> frontier;
  Permutation id = Permutation::identity(degree);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Permutation current = std::move(frontier.front());
    frontier.pop_front();
    for (const Permutation& g : gens) {
      Permutation next = g.compose(current);
      if (seen.insert(next).second) {
        if (seen.size() > order_limit) {
          throw LimitExceeded("group closure grew past order limit " +
                              std::to_string(order_limit));
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  std::vector<Permutation> elements(seen.begin(), seen.end());
  std::sort(elements.begin(), elements.end());
  return elements;
}

}  // namespace

const std::vector<Permutation>& FiniteGroup::elements(
    std::uint64_t order_limit) const {
  // If the closure throws (limit exceeded), the once-flag stays unset and a
  // later call with a higher limit retries cleanly.
  std::call_once(cache_->once, [&] {
    cache_->elements = close_generators(generators_, degree_, order_limit);
    cache_->computed = true;
  });
  return cache_->elements;
}

std::uint64_t FiniteGroup::order(std::uint64_t order_limit) const {
  return elements(order_limit).size();
}

bool FiniteGroup::contains(const Permutation& p,
                           std::uint64_t order_limit) const {
  if (p.degree() != degree_) return false;
  const auto& elems = elements(order_limit);
  return std::binary_search(elems.begin(), elems.end(), p);
}

bool FiniteGroup::closed() const { return cache_->computed; }

GroupRelations group_relations(const FiniteGroup& N, const FiniteGroup& G,
                               std::uint64_t order_limit) {
  if (N.degree() != G.degree()) {
    throw DegreeMismatch("group_relations requires equal degree");
  }
  GroupRelations rel;
  rel.is_subgroup = true;
  for (const Permutation& n : N.elements(order_limit)) {
    if (!G.contains(n, order_limit)) {
      rel.is_subgroup = false;
      break;
    }
  }
  if (rel.is_subgroup) {
    rel.index = G.order(order_limit) / N.order(order_limit);
    rel.is_normal = true;
    for (const Permutation& g : G.generators()) {
      Permutation ginv = g.inverse();
      for (const Permutation& n : N.generators().empty()
                                      ? N.elements(order_limit)
                                      : N.generators()) {
        if (!N.contains(g.compose(n).compose(ginv), order_limit)) {
          rel.is_normal = false;
          break;
        }
      }
      if (!rel.is_normal) break;
    }
    // Conjugating the generators into N suffices only when closed over all
    // of G's generators; N generated means conjugates of generators generate
    // the conjugate subgroup, so this test is exact.
  }
  return rel;
}

// ---------------------------------------------------------------------------
// Orbit machinery.  Objects (subsets or tuples) are ranked into an index
// space; orbits are connected components under the generator action.  The
// scan visits objects in lexicographic order, so the first object seen in
// each component is the lexicographically least member of its orbit —
// the same canonical form a minimum-image sweep over all elements yields.
// ---------------------------------------------------------------------------

namespace {

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

// Enumerates sorted n-subsets of {0..degree-1} in lexicographic order.
bool next_subset(std::vector<std::uint16_t>& s, std::size_t degree) {
  std::size_t n = s.size();
  if (n == 0) return false;
  std::size_t i = n;
  while (i > 0) {
    --i;
    if (s[i] + 1 < degree - (n - 1 - i)) {
      ++s[i];
      for (std::size_t j = i + 1; j < n; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t subset_rank(const std::vector<std::uint16_t>& s,
                          std::size_t degree) {
  // Rank in the lexicographic listing of sorted subsets.
  std::uint64_t rank = 0;
  std::size_t n = s.size();
  std::uint16_t prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint16_t c = prev; c < s[i]; ++c) {
      rank += binomial_u64(degree - 1 - c, n - 1 - i);
    }
    prev = static_cast<std::uint16_t>(s[i] + 1);
  }
  return rank;
}

std::vector<std::uint16_t> apply_to_subset(const Permutation& g,
                                           const std::vector<std::uint16_t>& s) {
  std::vector<std::uint16_t> image(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) image[i] = g(s[i]);
  std::sort(image.begin(), image.end());
  return image;
}

std::vector<std::uint16_t> apply_to_tuple(const Permutation& g,
                                          const std::vector<std::uint16_t>& t) {
  std::vector<std::uint16_t> image(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) image[i] = g(t[i]);
  return image;
}

const std::vector<Permutation>& acting_generators(
    const FiniteGroup& G, std::vector<Permutation>& fallback) {
  if (!G.generators().empty()) return G.generators();
  fallback = {Permutation::identity(G.degree())};
  return fallback;
}

// Generic flood fill over an object space given rank/unrank/apply.
template <typename Unrank, typename Rank>
std::uint64_t orbit_component_count(const FiniteGroup& G,
                                    std::uint64_t object_count,
                                    Unrank unrank, Rank rank,
                                    bool sort_images) {
  std::vector<Permutation> fallback;
  const std::vector<Permutation>& gens = acting_generators(G, fallback);
  std::vector<bool> visited(object_count, false);
  std::uint64_t components = 0;
  std::vector<std::uint64_t> stack;
  for (std::uint64_t start = 0; start < object_count; ++start) {
    if (visited[start]) continue;
    ++components;
    visited[start] = true;
    stack.assign(1, start);
    while (!stack.empty()) {
      std::uint64_t at = stack.back();
      stack.pop_back();
      std::vector<std::uint16_t> obj = unrank(at);
      for (const Permutation& g : gens) {
        std::vector<std::uint16_t> img(obj.size());
        for (std::size_t i = 0; i < obj.size(); ++i) img[i] = g(obj[i]);
        if (sort_images) std::sort(img.begin(), img.end());
        std::uint64_t r = rank(img);
        if (!visited[r]) {
          visited[r] = true;
          stack.push_back(r);
        }
      }
    }
  }
  return components;
}

std::uint64_t pow_u64_checked(std::uint64_t base, std::size_t exp,
                              std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) {
      throw LimitExceeded("tuple space larger than object cap");
    }
    v *= base;
  }
  return v;
}

}  // namespace

std::uint64_t subset_orbit_count(const FiniteGroup& G, std::size_t n) {
  std::size_t d = G.degree();
  if (n > d) return 0;
  if (n == 0) return 1;
  std::uint64_t total = binomial_u64(d, n);
  auto unrank = [&](std::uint64_t r) {
    // Walk the lexicographic listing.
    std::vector<std::uint16_t> s(n);
    std::uint16_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (true) {
        std::uint64_t block = binomial_u64(d - 1 - c, n - 1 - i);
        if (r < block) break;
        r -= block;
        ++c;
      }
      s[i] = c++;
    }
    return s;
  };
  auto rank = [&](const std::vector<std::uint16_t>& s) {
    return subset_rank(s, d);
  };
  return orbit_component_count(G, total, unrank, rank, /*sort_images=*/true);
}

namespace {

std::uint64_t injective_tuple_count(std::size_t degree, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= (degree - i);
  return total;
}

// Injective n-tuples ranked in the mixed-radix "falling factorial" order:
// position i chooses among the remaining degree-i points in increasing order.
std::vector<std::uint16_t> unrank_injective(std::uint64_t r, std::size_t degree,
                                            std::size_t n) {
  std::vector<std::uint16_t> avail(degree);
  std::iota(avail.begin(), avail.end(), 0);
  std::vector<std::uint16_t> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t radix = 1;
    for (std::size_t j = i + 1; j < n; ++j) radix *= (degree - j);
    std::size_t idx = static_cast<std::size_t>(r / radix);
    r %= radix;
    t[i] = avail[idx];
    avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return t;
}

std::uint64_t rank_injective(const std::vector<std::uint16_t>& t,
                             std::size_t degree) {
  std::size_t n = t.size();
  std::uint64_t r = 0;
  std::vector<std::uint16_t> avail(degree);
  std::iota(avail.begin(), avail.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(avail.begin(), avail.end(), t[i]);
    std::uint64_t idx = static_cast<std::uint64_t>(it - avail.begin());
    std::uint64_t radix = 1;
    for (std::size_t j = i + 1; j < n; ++j) radix *= (degree - j);
    r += idx * radix;
    avail.erase(it);
  }
  return r;
}

}  // namespace

std::uint64_t injective_tuple_orbit_count(const FiniteGroup& G,
                                          std::size_t n) {
  std::size_t d = G.degree();
  if (n > d) return 0;
  if (n == 0) return 1;
  std::uint64_t total = injective_tuple_count(d, n);
  auto unrank = [&](std::uint64_t r) { return unrank_injective(r, d, n); };
  auto rank = [&](const std::vector<std::uint16_t>& t) {
    return rank_injective(t, d);
  };
  return orbit_component_count(G, total, unrank, rank, /*sort_images=*/false);
}

std::vector<std::vector<std::uint16_t>> injective_orbit_representatives(
    const FiniteGroup& G, std::size_t n) {
  std::size_t d = G.degree();
  std::vector<std::vector<std::uint16_t>> reps;
  if (n > d) return reps;
  if (n == 0) {
    reps.emplace_back();
    return reps;
  }
  std::uint64_t total = injective_tuple_count(d, n);
  std::vector<Permutation> fallback;
  const auto& gens = acting_generators(G, fallback);
  std::vector<bool> visited(total, false);
  std::vector<std::uint64_t> stack;
  for (std::uint64_t start = 0; start < total; ++start) {
    if (visited[start]) continue;
    reps.push_back(unrank_injective(start, d, n));  // lex scan ⇒ orbit minimum
    visited[start] = true;
    stack.assign(1, start);
    while (!stack.empty()) {
      std::uint64_t at = stack.back();
      stack.pop_back();
      std::vector<std::uint16_t> obj = unrank_injective(at, d, n);
      for (const Permutation& g : gens) {
        std::uint64_t r = rank_injective(apply_to_tuple(g, obj), d);
        if (!visited[r]) {
          visited[r] = true;
          stack.push_back(r);
        }
      }
    }
  }
  return reps;
}

std::uint64_t tuple_orbit_count(const FiniteGroup& G, std::size_t n) {
  std::size_t d = G.degree();
  if (n == 0) return 1;
  if (d == 0) return 0;
  std::uint64_t total = pow_u64_checked(d, n, 20'000'000);
  auto unrank = [&](std::uint64_t r) {
    std::vector<std::uint16_t> t(n);
    for (std::size_t i = n; i-- > 0;) {
      t[i] = static_cast<std::uint16_t>(r % d);
      r /= d;
    }
    return t;
  };
  auto rank = [&](const std::vector<std::uint16_t>& t) {
    std::uint64_t r = 0;
    for (std::uint16_t v : t) r = r * d + v;
    return r;
  };
  return orbit_component_count(G, total, unrank, rank, /*sort_images=*/false);
}

OrbitCounts orbit_counts(const FiniteGroup& G, std::size_t n,
                         std::uint64_t object_limit) {
  std::size_t d = G.degree();
  if (n > 0 && d > 0) {
    // guard the largest of the three object spaces
    pow_u64_checked(d, n, object_limit);
  }
  OrbitCounts counts;
  counts.subsets = subset_orbit_count(G, n);
  counts.injective = injective_tuple_orbit_count(G, n);
  counts.tuples = tuple_orbit_count(G, n);
  return counts;
}

std::vector<std::uint16_t> canonical_subset(const FiniteGroup& G,
                                            std::vector<std::uint16_t> subset) {
  std::sort(subset.begin(), subset.end());
  // Small orbit BFS keeping the least member seen.
  std::vector<Permutation> fallback;
  const auto& gens = acting_generators(G, fallback);
  std::vector<std::vector<std::uint16_t>> stack{subset};
  std::unordered_set<std::uint64_t> seen;
  std::size_t d = G.degree();
  auto key = [&](const std::vector<std::uint16_t>& s) {
    std::uint64_t k = 0;
    for (std::uint16_t v : s) k = k * (d + 1) + (v + 1);
    return k;
  };
  seen.insert(key(subset));
  std::vector<std::uint16_t> best = subset;
  while (!stack.empty()) {
    auto cur = std::move(stack.back());
    stack.pop_back();
    for (const Permutation& g : gens) {
      auto img = apply_to_subset(g, cur);
      if (seen.insert(key(img)).second) {
        if (img < best) best = img;
        stack.push_back(std::move(img));
      }
    }
  }
  return best;
}

std::vector<std::uint16_t> canonical_tuple(const FiniteGroup& G,
                                           std::vector<std::uint16_t> tuple) {
  std::vector<Permutation> fallback;
  const auto& gens = acting_generators(G, fallback);
  std::size_t d = G.degree();
  auto key = [&](const std::vector<std::uint16_t>& s) {
    std::uint64_t k = 0;
    for (std::uint16_t v : s) k = k * (d + 1) + (v + 1);
    return k;
  };
  std::vector<std::vector<std::uint16_t>> stack{tuple};
  std::unordered_set<std::uint64_t> seen{key(tuple)};
  std::vector<std::uint16_t> best = tuple;
  while (!stack.empty()) {
    auto cur = std::move(stack.back());
    stack.pop_back();
    for (const Permutation& g : gens) {
      auto img = apply_to_tuple(g, cur);
      if (seen.insert(key(img)).second) {
        if (img < best) best = img;
        stack.push_back(std::move(img));
      }
    }
  }
  return best;
}

bool is_highly_set_transitive(const FiniteGroup& G) {
  for (std::size_t k = 0; k <= G.degree(); ++k) {
    if (subset_orbit_count(G, k) != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
  std::size_t da = A.degree(), db = B.degree();
  std::vector<Permutation> gens;
  for (const Permutation& g : A.generators()) {
    gens.push_back(g.padded(da + db));
  }
  for (const Permutation& h : B.generators()) {
    std::vector<std::uint16_t> images(da + db);
    std::iota(images.begin(), images.end(), 0);
    for (std::size_t y = 0; y < db; ++y) {
      images[da + y] = static_cast<std::uint16_t>(da + h(static_cast<std::uint16_t>(y)));
    }
    gens.emplace_back(std::move(images));
  }
  return FiniteGroup::from_generators(std::move(gens), da + db);
}

FiniteGroup wreath(const FiniteGroup& G, const FiniteGroup& H) {
  std::size_t dg = G.degree(), dh = H.degree();
  std::size_t degree = dg * dh;
  std::vector<Permutation> gens;
  // Point (x, y) is flattened as x + dg·y.
  for (const Permutation& g : G.generators()) {
    std::vector<std::uint16_t> images(degree);
    std::iota(images.begin(), images.end(), 0);
    for (std::size_t x = 0; x < dg; ++x) {
      images[x] = g(static_cast<std::uint16_t>(x));  // fiber over y = 0
    }
    gens.emplace_back(std::move(images));
  }
  for (const Permutation& h : H.generators()) {
    std::vector<std::uint16_t> images(degree);
    for (std::size_t y = 0; y < dh; ++y) {
      for (std::size_t x = 0; x < dg; ++x) {
        images[x + dg * y] =
            static_cast<std::uint16_t>(x + dg * h(static_cast<std::uint16_t>(y)));
      }
    }
    gens.emplace_back(std::move(images));
  }
  return FiniteGroup::from_generators(std::move(gens), degree);
}

FiniteGroup restriction(const FiniteGroup& G,
                        const std::vector<std::uint16_t>& points) {
  std::vector<std::uint16_t> sorted(points);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> position(G.degree(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= G.degree()) throw OutOfRange("restriction point beyond degree");
    position[sorted[i]] = static_cast<int>(i);
  }
  std::vector<Permutation> gens;
  for (const Permutation& g : G.generators()) {
    std::vector<std::uint16_t> images(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      std::uint16_t img = g(sorted[i]);
      if (position[img] < 0) {
        throw ValidationError("point set is not invariant under the group");
      }
      images[i] = static_cast<std::uint16_t>(position[img]);
    }
    gens.emplace_back(std::move(images));
  }
  return FiniteGroup::from_generators(std::move(gens), sorted.size());
}

FiniteGroup pointwise_stabilizer(const FiniteGroup& G,
                                 const std::vector<std::uint16_t>& points) {
  std::vector<Permutation> kept;
  for (const Permutation& e : G.elements()) {
    bool fixes = true;
    for (std::uint16_t p : points) {
      if (p >= G.degree()) throw OutOfRange("stabilized point beyond degree");
      if (e(p) != p) {
        fixes = false;
        break;
      }
    }
    if (fixes && !e.is_identity()) kept.push_back(e);
  }
  return FiniteGroup::from_generators(std::move(kept), G.degree());
}

FiniteGroup setwise_stabilizer(const FiniteGroup& G,
                               const std::vector<std::uint16_t>& points) {
  std::vector<bool> in_set(G.degree(), false);
  for (std::uint16_t p : points) {
    if (p >= G.degree()) throw OutOfRange("stabilized point beyond degree");
    in_set[p] = true;
  }
  std::vector<Permutation> kept;
  for (const Permutation& e : G.elements()) {
    bool stable = true;
    for (std::uint16_t p = 0; p < G.degree(); ++p) {
      if (in_set[p] && !in_set[e(p)]) {
        stable = false;
        break;
      }
    }
    if (stable && !e.is_identity()) kept.push_back(e);
  }
  return FiniteGroup::from_generators(std::move(kept), G.degree());
}

// ---------------------------------------------------------------------------
// Congruences
// ---------------------------------------------------------------------------

CongruencePartition partition_from_classes(
    const std::vector<std::vector<std::uint16_t>>& classes,
    std::size_t degree) {
  CongruencePartition E;
  E.degree = degree;
  E.class_of.assign(degree, 0xFFFF);
  E.class_count = classes.size();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw ValidationError("empty congruence class");
    for (std::uint16_t p : classes[c]) {
      if (p >= degree || E.class_of[p] != 0xFFFF) {
        throw ValidationError("classes must partition the domain");
      }
      E.class_of[p] = static_cast<std::uint16_t>(c);
    }
  }
  for (std::uint16_t c : E.class_of) {
    if (c == 0xFFFF) throw ValidationError("classes must cover the domain");
  }
  return E;
}

bool is_congruence(const FiniteGroup& G, const CongruencePartition& E) {
  if (E.degree != G.degree()) {
    throw DegreeMismatch("congruence degree differs from group degree");
  }
  // Invariance under generators implies invariance under the whole group.
  for (const Permutation& g : G.generators()) {
    for (std::size_t x = 0; x < E.degree; ++x) {
      for (std::size_t y = x + 1; y < E.degree; ++y) {
        bool same = E.class_of[x] == E.class_of[y];
        bool image_same = E.class_of[g(static_cast<std::uint16_t>(x))] ==
                          E.class_of[g(static_cast<std::uint16_t>(y))];
        if (same != image_same) return false;
      }
    }
  }
  return true;
}

QuotientData quotient_by_congruence(const FiniteGroup& G,
                                    const CongruencePartition& E) {
  if (!is_congruence(G, E)) {
    throw NotACongruence("partition is not invariant under the group");
  }
  QuotientData out;
  out.congruence = E;
  std::vector<Permutation> images;
  for (const Permutation& g : G.generators()) {
    std::vector<std::uint16_t> img(E.class_count);
    std::vector<bool> set(E.class_count, false);
    for (std::size_t x = 0; x < E.degree; ++x) {
      std::uint16_t c = E.class_of[x];
      std::uint16_t gc = E.class_of[g(static_cast<std::uint16_t>(x))];
      if (set[c] && img[c] != gc) {
        throw NotACongruence("generator does not descend to the classes");
      }
      img[c] = gc;
      set[c] = true;
    }
    images.emplace_back(std::move(img));
  }
  out.generator_images = images;
  out.group = FiniteGroup::from_generators(std::move(images), E.class_count);
  return out;
}

CongruenceReport congruence_count(const FiniteGroup& G,
                                  std::size_t degree_cap) {
  std::size_t d = G.degree();
  if (d > degree_cap) {
    throw LimitExceeded("congruence enumeration capped at degree " +
                        std::to_string(degree_cap));
  }
  CongruenceReport report;
  if (d == 0) return report;
  // Restricted-growth strings a: a[0]=0, a[i] ≤ 1+max(a[0..i-1]).
  std::vector<std::uint16_t> a(d, 0);
  while (true) {
    CongruencePartition E;
    E.degree = d;
    E.class_of = a;
    E.class_count =
        static_cast<std::size_t>(*std::max_element(a.begin(), a.end())) + 1;
    if (is_congruence(G, E)) {
      ++report.count;
      report.congruences.push_back(std::move(E));
    }
    // next restricted-growth string
    std::size_t i = d;
    bool advanced = false;
    while (i > 1) {
      --i;
      std::uint16_t maxprefix = 0;
      for (std::size_t j = 0; j < i; ++j) maxprefix = std::max(maxprefix, a[j]);
      if (a[i] <= maxprefix) {
        ++a[i];
        for (std::size_t j = i + 1; j < d; ++j) a[j] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string group_to_json(const FiniteGroup& G) {
  nlohmann::ordered_json j;
  j["degree"] = G.degree();
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (const Permutation& g : G.generators()) {
    gens.push_back(g.to_cycles());
  }
  j["generators"] = std::move(gens);
  return j.dump();
}

FiniteGroup group_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("group JSON: ") + e.what());
  }
  if (!j.contains("degree") || !j["degree"].is_number_unsigned()) {
    throw ValidationError("group JSON needs a nonnegative \"degree\"");
  }
  std::size_t degree = j["degree"].get<std::size_t>();
  if (degree > 0xFFFF) throw ValidationError("degree too large");
  std::vector<Permutation> gens;
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) {
      throw ValidationError("\"generators\" must be an array");
    }
    for (const auto& item : j["generators"]) {
      if (!item.is_string()) {
        throw ValidationError("generators must be cycle strings");
      }
      gens.push_back(Permutation::from_cycles(item.get<std::string>(), degree));
    }
  }
  return FiniteGroup::from_generators(std::move(gens), degree);
}

}  // namespace qgrowth
