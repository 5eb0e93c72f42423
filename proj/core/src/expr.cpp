#include "qgrowth/expr.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <nlohmann/json.hpp>

#include "qgrowth/errors.hpp"
#include "qgrowth/wordmodel.hpp"

namespace qgrowth {

GroupExpr expr_finite(FiniteGroup g) {
  GroupExpr e;
  e.kind = ExprKind::Finite;
  e.finite = std::move(g);
  return e;
}

GroupExpr expr_atom(FiberCoverSpec spec) {
  GroupExpr e;
  e.kind = ExprKind::Atom;
  e.atom = std::move(spec);
  return e;
}

GroupExpr expr_prod(std::vector<GroupExpr> children) {
  GroupExpr e;
  e.kind = ExprKind::Prod;
  e.children = std::move(children);
  return e;
}

GroupExpr expr_wr_omega(GroupExpr child) {
  GroupExpr e;
  e.kind = ExprKind::WrOmega;
  e.children.push_back(std::move(child));
  return e;
}

void validate_expr(const GroupExpr& e) {
  switch (e.kind) {
    case ExprKind::Finite:
      if (!e.children.empty()) throw ValidationError("a finite leaf has no children");
      return;
    case ExprKind::Atom:
      require_valid(e.atom);
      if (!e.children.empty()) throw ValidationError("an atom leaf has no children");
      return;
    case ExprKind::Prod:
      if (e.children.empty()) throw ValidationError("a product needs at least one factor");
      for (const GroupExpr& c : e.children) validate_expr(c);
      return;
    case ExprKind::WrOmega:
      if (e.children.size() != 1) {
        throw ValidationError("a wreath extension has exactly one child");
      }
      validate_expr(e.children.front());
      return;
  }
}

std::string expr_to_json(const GroupExpr& e) {
  nlohmann::json out;
  switch (e.kind) {
    case ExprKind::Finite:
      out["finite"] = nlohmann::json::parse(group_to_json(e.finite));
      break;
    case ExprKind::Atom:
      out["atom"] = nlohmann::json::parse(spec_to_json(e.atom));
      break;
    case ExprKind::Prod: {
      nlohmann::json list = nlohmann::json::array();
      for (const GroupExpr& c : e.children) {
        list.push_back(nlohmann::json::parse(expr_to_json(c)));
      }
      out["prod"] = std::move(list);
      break;
    }
    case ExprKind::WrOmega:
      out["wr_omega"] = nlohmann::json::parse(expr_to_json(e.children.front()));
      break;
  }
  return out.dump();
}

GroupExpr expr_from_json(const std::string& text) {
  nlohmann::json in;
  try {
    in = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid expression json: ") + e.what());
  }
  std::function<GroupExpr(const nlohmann::json&)> build =
      [&](const nlohmann::json& node) -> GroupExpr {
    if (!node.is_object() || node.size() != 1) {
      throw ParseError("expression json must be a single-key object");
    }
    if (node.contains("finite")) {
      return expr_finite(group_from_json(node["finite"].dump()));
    }
    if (node.contains("atom")) {
      return expr_atom(spec_from_json(node["atom"].dump()));
    }
    if (node.contains("prod")) {
      if (!node["prod"].is_array() || node["prod"].empty()) {
        throw ParseError("a product needs a nonempty child array");
      }
      std::vector<GroupExpr> children;
      for (const nlohmann::json& c : node["prod"]) children.push_back(build(c));
      return expr_prod(std::move(children));
    }
    if (node.contains("wr_omega")) {
      return expr_wr_omega(build(node["wr_omega"]));
    }
    throw ParseError("unknown expression node");
  };
  GroupExpr e = build(in);
  validate_expr(e);
  return e;
}

bool expr_equal(const GroupExpr& a, const GroupExpr& b) {
  return expr_to_json(a) == expr_to_json(b);
}

namespace {

// Letter classes: orbits of the letter group on nonempty fiber subsets,
// represented as bit masks.  class_of[mask] indexes into reps.
struct LetterClasses {
  std::vector<int> class_of;          // size 2^F, entry 0 unused
  std::vector<std::uint32_t> reps;    // least mask per class
  std::vector<std::size_t> sizes;     // popcount of each class
};

std::uint32_t mask_image(std::uint32_t mask, const Permutation& g) {
  std::uint32_t image = 0;
  for (std::uint16_t f = 0; f < g.degree(); ++f) {
    if (mask & (1u << f)) image |= 1u << g(f);
  }
  return image;
}

LetterClasses letter_classes(const FiniteGroup& H, std::size_t fiber) {
  const std::uint32_t top = 1u << fiber;
  LetterClasses table;
  table.class_of.assign(top, -1);
  for (std::uint32_t mask = 1; mask < top; ++mask) {
    if (table.class_of[mask] != -1) continue;
    const int id = static_cast<int>(table.reps.size());
    table.reps.push_back(mask);
    table.sizes.push_back(static_cast<std::size_t>(__builtin_popcount(mask)));
    std::vector<std::uint32_t> frontier = {mask};
    table.class_of[mask] = id;
    while (!frontier.empty()) {
      const std::uint32_t current = frontier.back();
      frontier.pop_back();
      for (const Permutation& g : H.generators()) {
        const std::uint32_t next = mask_image(current, g);
        if (table.class_of[next] == -1) {
          table.class_of[next] = id;
          frontier.push_back(next);
        }
      }
    }
  }
  return table;
}

// One representative of every left coset of H in L, with multiplicity
// (cosets sharing a table are merged by the caller where possible).
struct CosetRep {
  Permutation rep;
  std::uint64_t weight = 1;
};

std::vector<CosetRep> coset_reps(const FiniteGroup& H, const FiniteGroup& L) {
  std::vector<CosetRep> reps;
  if (H.order() == 1) {
    // Every element is its own coset; conjugate elements induce
    // permutation-isomorphic actions on letter classes, so one
    // representative per cycle type carries the whole class weight.
    std::map<std::vector<std::size_t>, std::size_t> bucket_of;
    for (const Permutation& l : L.elements()) {
      std::vector<std::size_t> type;
      std::vector<bool> seen(l.degree(), false);
      for (std::uint16_t p = 0; p < l.degree(); ++p) {
        if (seen[p]) continue;
        std::size_t len = 0;
        for (std::uint16_t q = p; !seen[q]; q = l(q)) {
          seen[q] = true;
          ++len;
        }
        type.push_back(len);
      }
      std::sort(type.begin(), type.end());
      const auto it = bucket_of.find(type);
      if (it == bucket_of.end()) {
        bucket_of.emplace(std::move(type), reps.size());
        reps.push_back({l, 1});
      } else {
        ++reps[it->second].weight;
      }
    }
    return reps;
  }
  std::unordered_set<Permutation, PermutationHash> assigned;
  for (const Permutation& l : L.elements()) {
    if (assigned.count(l)) continue;
    reps.push_back({l, 1});
    for (const Permutation& h : H.elements()) assigned.insert(l * h);
  }
  return reps;
}

OrbitSeries atom_series(const FiberCoverSpec& spec, std::size_t N,
                        std::size_t bfs_cap) {
  const FiberCoverSpec canon = canonical_spec(spec);
  const bool word_path =
      canon.base == QReduct::Cyc || canon.base == QReduct::Sep ||
      (canon.base == QReduct::Betw && canon.flip.has_value());
  if (word_path) {
    std::vector<BigInt> coeff(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
      coeff[n] = count_subset_orbits(spec, n, bfs_cap);
    }
    return make_series(SeriesKind::U, std::move(coeff));
  }

  const LetterClasses classes = letter_classes(canon.H, canon.fiber_size);
  if (canon.base == QReduct::Eq) {
    // Configurations are multisets of letter classes; the global group
    // acts diagonally through the coset quotient.  Averaging the fixed
    // multiset series over that quotient counts the orbits.
    const std::vector<CosetRep> reps = coset_reps(canon.H, canon.L);
    std::uint64_t quotient_order = 0;
    for (const CosetRep& r : reps) quotient_order += r.weight;
    std::vector<BigInt> total(N + 1, 0);
    for (const CosetRep& r : reps) {
      std::vector<int> image(classes.reps.size());
      for (std::size_t c = 0; c < classes.reps.size(); ++c) {
        image[c] = classes.class_of[mask_image(classes.reps[c], r.rep)];
      }
      std::vector<BigInt> fixed(N + 1, 0);
      fixed[0] = 1;
      std::vector<bool> seen(image.size(), false);
      for (std::size_t c = 0; c < image.size(); ++c) {
        if (seen[c]) continue;
        std::size_t len = 0;
        for (std::size_t d = c; !seen[d]; d = static_cast<std::size_t>(image[d])) {
          seen[d] = true;
          ++len;
        }
        const std::size_t w = len * classes.sizes[c];
        if (w > N) continue;
        for (std::size_t i = w; i <= N; ++i) fixed[i] += fixed[i - w];
      }
      for (std::size_t i = 0; i <= N; ++i) total[i] += r.weight * fixed[i];
    }
    for (std::size_t i = 0; i <= N; ++i) {
      if (total[i] % quotient_order != 0) {
        throw NonIntegerAverage("orbit average is not an integer");
      }
      total[i] /= quotient_order;
    }
    return make_series(SeriesKind::U, std::move(total));
  }

  // Linear-order base (or its reversal-free betweenness twin): ordered
  // sequences of letter classes modulo the coset quotient.
  if (canon.H.order() == canon.L.order()) {
    std::vector<BigInt> h_counts(canon.fiber_size, 0);
    for (std::size_t c = 0; c < classes.reps.size(); ++c) {
      h_counts[classes.sizes[c] - 1] += 1;
    }
    return cover_recursion(h_counts, N);
  }
  const std::vector<CosetRep> reps = coset_reps(canon.H, canon.L);
  std::uint64_t quotient_order = 0;
  std::vector<BurnsideClassTable> tables;
  for (const CosetRep& r : reps) {
    quotient_order += r.weight;
    BurnsideClassTable table;
    table.weight = r.weight;
    table.fixed_class_counts.assign(canon.fiber_size, 0);
    for (std::size_t c = 0; c < classes.reps.size(); ++c) {
      if (classes.class_of[mask_image(classes.reps[c], r.rep)] ==
          static_cast<int>(c)) {
        table.fixed_class_counts[classes.sizes[c] - 1] += 1;
      }
    }
    tables.push_back(std::move(table));
  }
  return burnside_sequences(tables, quotient_order, N);
}

FiniteGroup symmetric_group(std::size_t t) {
  std::vector<Permutation> gens;
  if (t >= 2) {
    std::vector<std::uint16_t> swap_images(t);
    std::iota(swap_images.begin(), swap_images.end(), 0);
    std::swap(swap_images[0], swap_images[1]);
    gens.emplace_back(std::move(swap_images));
  }
  if (t >= 3) {
    std::vector<std::uint16_t> cycle(t);
    for (std::size_t i = 0; i < t; ++i) cycle[i] = static_cast<std::uint16_t>((i + 1) % t);
    gens.emplace_back(std::move(cycle));
  }
  return FiniteGroup::from_generators(std::move(gens), t);
}

OrbitSeries finite_series(const FiniteGroup& g, std::size_t N) {
  std::vector<BigInt> coeff(N + 1, 0);
  for (std::size_t n = 0; n <= std::min(N, g.degree()); ++n) {
    coeff[n] = subset_orbit_count(g, n);
  }
  return make_series(SeriesKind::U, std::move(coeff));
}

}  // namespace

OrbitSeries profile(const GroupExpr& e, std::size_t N, std::size_t bfs_cap) {
  validate_expr(e);
  static std::mutex cache_mutex;
  static std::map<std::string, OrbitSeries> cache;
  const std::string key =
      expr_to_json(e) + "#" + std::to_string(N) + "#" + std::to_string(bfs_cap);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  OrbitSeries result;
  switch (e.kind) {
    case ExprKind::Finite:
      result = finite_series(e.finite, N);
      break;
    case ExprKind::Atom:
      result = atom_series(e.atom, N, bfs_cap);
      break;
    case ExprKind::Prod: {
      result = profile(e.children.front(), N, bfs_cap);
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        result = convolve(result, profile(e.children[i], N, bfs_cap));
      }
      break;
    }
    case ExprKind::WrOmega:
      result = euler_transform(profile(e.children.front(), N, bfs_cap));
      break;
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, result);
  return result;
}

namespace {

bool contains_atom(const GroupExpr& e) {
  if (e.kind == ExprKind::Atom) return true;
  for (const GroupExpr& c : e.children) {
    if (contains_atom(c)) return true;
  }
  return false;
}

std::size_t max_atom_fiber(const GroupExpr& e) {
  std::size_t best = 0;
  if (e.kind == ExprKind::Atom) best = e.atom.fiber_size;
  for (const GroupExpr& c : e.children) best = std::max(best, max_atom_fiber(c));
  return best;
}

OrbitSeries oracle_eval(const GroupExpr& e, std::size_t N,
                        std::size_t bfs_cap) {
  switch (e.kind) {
    case ExprKind::Finite:
      return finite_series(e.finite, N);
    case ExprKind::Atom: {
      std::vector<BigInt> coeff(N + 1);
      for (std::size_t n = 0; n <= N; ++n) {
        coeff[n] = count_subset_orbits(e.atom, n, bfs_cap);
      }
      return make_series(SeriesKind::U, std::move(coeff));
    }
    case ExprKind::Prod: {
      OrbitSeries result = oracle_eval(e.children.front(), N, bfs_cap);
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        result = convolve(result, oracle_eval(e.children[i], N, bfs_cap));
      }
      return result;
    }
    case ExprKind::WrOmega:
      return euler_transform(oracle_eval(e.children.front(), N, bfs_cap));
  }
  throw ValidationError("unreachable expression kind");
}

}  // namespace

OrbitSeries oracle_profile(const GroupExpr& e, std::size_t N,
                           std::size_t bfs_cap) {
  validate_expr(e);
  if (!contains_atom(e)) {
    const TruncationResult tr = truncate(e, std::max<std::size_t>(N, 1));
    std::vector<BigInt> coeff(N + 1, 0);
    for (std::size_t n = 0; n <= N; ++n) {
      coeff[n] = subset_orbit_count(tr.group, n);
    }
    return make_series(SeriesKind::U, std::move(coeff));
  }
  if (max_atom_fiber(e) > 3 || N > 10) {
    throw LimitExceeded(
        "oracle enumeration needs fibers at most 3 and order at most 10");
  }
  return oracle_eval(e, N, bfs_cap);
}

TruncationResult truncate(const GroupExpr& e, std::size_t t) {
  validate_expr(e);
  if (t == 0) throw OutOfRange("truncation must be positive");
  switch (e.kind) {
    case ExprKind::Finite:
      return {e.finite, t, t};
    case ExprKind::Atom:
      throw NotTruncatable("fiber atoms have no faithful finite realization");
    case ExprKind::Prod: {
      FiniteGroup group = truncate(e.children.front(), t).group;
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        group = direct_product(group, truncate(e.children[i], t).group);
      }
      return {std::move(group), t, t};
    }
    case ExprKind::WrOmega: {
      const TruncationResult child = truncate(e.children.front(), t);
      return {wreath(child.group, symmetric_group(t)), t, t};
    }
  }
  throw ValidationError("unreachable expression kind");
}

StructureStats structure_stats(const GroupExpr& e) {
  validate_expr(e);
  StructureStats stats;
  std::function<std::size_t(const GroupExpr&)> walk =
      [&](const GroupExpr& node) -> std::size_t {
    switch (node.kind) {
      case ExprKind::Finite:
        return 0;
      case ExprKind::Atom:
        if (is_highly_set_transitive(node.atom.H)) {
          stats.max_fiber_d = std::max(stats.max_fiber_d, node.atom.fiber_size);
        } else {
          stats.has_non_hst_atom = true;
        }
        if (node.atom.fiber_size != 1) stats.all_fibers_one = false;
        return 0;
      case ExprKind::Prod: {
        std::size_t rank = 0;
        for (const GroupExpr& c : node.children) rank = std::max(rank, walk(c));
        return rank;
      }
      case ExprKind::WrOmega:
        return 1 + walk(node.children.front());
    }
    return 0;
  };
  stats.skeleton_rank = walk(e);
  return stats;
}

}  // namespace qgrowth
