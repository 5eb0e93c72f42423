#include "qgrowth/covers.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qgrowth/errors.hpp"

namespace qgrowth {

namespace {

std::vector<std::vector<std::uint16_t>> fibers_of(const FiniteCover& cover) {
  std::vector<std::vector<std::uint16_t>> fibers(cover.base.degree());
  for (std::size_t x = 0; x < cover.pi.size(); ++x) {
    fibers[cover.pi[x]].push_back(static_cast<std::uint16_t>(x));
  }
  return fibers;
}

bool same_elements(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.degree() != b.degree() || a.order() != b.order()) return false;
  for (const Permutation& g : a.generators()) {
    if (!b.contains(g)) return false;
  }
  return true;
}

std::vector<std::vector<std::uint16_t>> base_orbits(const FiniteGroup& base) {
  std::vector<std::vector<std::uint16_t>> orbits;
  std::vector<bool> seen(base.degree(), false);
  for (std::uint16_t start = 0; start < base.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<std::uint16_t> orbit = {start};
    seen[start] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const Permutation& g : base.generators()) {
        const std::uint16_t image = g(orbit[i]);
        if (!seen[image]) {
          seen[image] = true;
          orbit.push_back(image);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// Restriction of g to an ascending point list it stabilizes setwise.
Permutation restrict_to(const Permutation& g,
                        const std::vector<std::uint16_t>& points,
                        const std::vector<int>& position) {
  std::vector<std::uint16_t> images(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    images[i] = static_cast<std::uint16_t>(position[g(points[i])]);
  }
  return Permutation(std::move(images));
}

std::vector<int> position_index(const std::vector<std::uint16_t>& points,
                                std::size_t degree) {
  std::vector<int> position(degree, -1);
  for (std::size_t i = 0; i < points.size(); ++i) position[points[i]] = static_cast<int>(i);
  return position;
}

}  // namespace

std::vector<std::string> validate_cover(const FiniteCover& cover) {
  std::vector<std::string> problems;
  if (cover.pi.size() != cover.total.degree()) {
    problems.push_back("projection length does not match the total degree");
    return problems;
  }
  if (cover.base.degree() == 0 || cover.total.degree() == 0) {
    problems.push_back("cover domains must be nonempty");
    return problems;
  }
  std::vector<std::size_t> fiber_size(cover.base.degree(), 0);
  for (std::uint16_t a : cover.pi) {
    if (a >= cover.base.degree()) {
      problems.push_back("projection hits a point beyond the base degree");
      return problems;
    }
    ++fiber_size[a];
  }
  for (std::size_t a = 0; a < fiber_size.size(); ++a) {
    if (fiber_size[a] == 0) {
      problems.push_back("a base point has an empty fiber");
      return problems;
    }
  }
  std::vector<Permutation> induced;
  for (const Permutation& g : cover.total.generators()) {
    std::vector<int> image(cover.base.degree(), -1);
    for (std::size_t x = 0; x < cover.pi.size(); ++x) {
      const int target = cover.pi[g(static_cast<std::uint16_t>(x))];
      if (image[cover.pi[x]] == -1) {
        image[cover.pi[x]] = target;
      } else if (image[cover.pi[x]] != target) {
        problems.push_back("the fiber relation is not a congruence of the total group");
        return problems;
      }
    }
    std::vector<std::uint16_t> images(cover.base.degree());
    for (std::size_t a = 0; a < images.size(); ++a) {
      images[a] = static_cast<std::uint16_t>(image[a]);
    }
    induced.emplace_back(std::move(images));
  }
  const FiniteGroup mu = FiniteGroup::from_generators(std::move(induced),
                                                      cover.base.degree());
  if (!same_elements(mu, cover.base)) {
    problems.push_back("the induced base action differs from the stated base group");
  }
  return problems;
}

void require_valid_cover(const FiniteCover& cover) {
  const std::vector<std::string> problems = validate_cover(cover);
  if (!problems.empty()) throw InvalidCover(problems.front());
}

Permutation base_image(const FiniteCover& cover, const Permutation& g) {
  std::vector<std::uint16_t> images(cover.base.degree());
  std::vector<bool> set(cover.base.degree(), false);
  for (std::size_t x = 0; x < cover.pi.size(); ++x) {
    if (!set[cover.pi[x]]) {
      set[cover.pi[x]] = true;
      images[cover.pi[x]] = cover.pi[g(static_cast<std::uint16_t>(x))];
    }
  }
  return Permutation(std::move(images));
}

FiniteCover make_cover(const FiniteGroup& total,
                       const std::vector<std::uint16_t>& pi) {
  if (pi.size() != total.degree() || pi.empty()) {
    throw InvalidCover("projection length does not match the total degree");
  }
  const std::uint16_t base_degree =
      static_cast<std::uint16_t>(*std::max_element(pi.begin(), pi.end()) + 1);
  FiniteCover cover;
  cover.total = total;
  cover.pi = pi;
  cover.base = FiniteGroup::from_generators({}, base_degree);
  std::vector<std::string> problems = validate_cover(cover);
  // Only the congruence and fiber problems matter here; the base is derived.
  for (const std::string& p : problems) {
    if (p != "the induced base action differs from the stated base group") {
      throw InvalidCover(p);
    }
  }
  std::vector<Permutation> induced;
  for (const Permutation& g : total.generators()) {
    induced.push_back(base_image(cover, g));
  }
  cover.base = FiniteGroup::from_generators(std::move(induced), base_degree);
  return cover;
}

std::string cover_to_json(const FiniteCover& cover) {
  nlohmann::json out;
  out["total"] = nlohmann::json::parse(group_to_json(cover.total));
  out["base"] = nlohmann::json::parse(group_to_json(cover.base));
  out["pi"] = cover.pi;
  return out.dump();
}

FiniteCover cover_from_json(const std::string& text) {
  nlohmann::json in;
  try {
    in = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid cover json: ") + e.what());
  }
  if (!in.is_object() || !in.contains("total") || !in.contains("base") ||
      !in.contains("pi") || !in["pi"].is_array()) {
    throw ParseError("cover json must carry total, base and pi");
  }
  FiniteCover cover;
  cover.total = group_from_json(in["total"].dump());
  cover.base = group_from_json(in["base"].dump());
  cover.pi = in["pi"].get<std::vector<std::uint16_t>>();
  require_valid_cover(cover);
  return cover;
}

CoverAnalysis analyze(const FiniteCover& cover, std::uint64_t order_limit) {
  require_valid_cover(cover);
  CoverAnalysis analysis;

  std::vector<Permutation> kernel_elements;
  for (const Permutation& e : cover.total.elements(order_limit)) {
    if (base_image(cover, e).is_identity() && !e.is_identity()) {
      kernel_elements.push_back(e);
    }
  }
  analysis.kernel =
      FiniteGroup::from_generators(std::move(kernel_elements), cover.total.degree());

  const std::vector<std::vector<std::uint16_t>> fibers = fibers_of(cover);
  for (std::size_t a = 0; a < fibers.size(); ++a) {
    CoverPointAnalysis point;
    point.fiber = fibers[a];
    const std::vector<int> position = position_index(point.fiber,
                                                     cover.total.degree());
    std::vector<Permutation> fiber_gens, binding_gens, supported_gens;
    std::vector<std::uint16_t> outside;
    for (std::uint16_t x = 0; x < cover.total.degree(); ++x) {
      if (position[x] < 0) outside.push_back(x);
    }
    for (const Permutation& e : cover.total.elements(order_limit)) {
      const Permutation mu = base_image(cover, e);
      if (mu(static_cast<std::uint16_t>(a)) != a) continue;
      const Permutation restricted = restrict_to(e, point.fiber, position);
      if (!restricted.is_identity()) {
        fiber_gens.push_back(restricted);
        if (mu.is_identity()) binding_gens.push_back(restricted);
      }
      bool supported = true;
      for (std::uint16_t x : outside) {
        if (e(x) != x) {
          supported = false;
          break;
        }
      }
      if (supported && !restricted.is_identity()) supported_gens.push_back(restricted);
    }
    point.fiber_group =
        FiniteGroup::from_generators(std::move(fiber_gens), point.fiber.size());
    point.binding =
        FiniteGroup::from_generators(std::move(binding_gens), point.fiber.size());
    point.pointwise_binding =
        FiniteGroup::from_generators(std::move(supported_gens), point.fiber.size());
    analysis.points.push_back(std::move(point));
  }

  analysis.trivial = analysis.kernel.order() == 1;
  analysis.linked = std::all_of(
      analysis.points.begin(), analysis.points.end(),
      [](const CoverPointAnalysis& p) { return p.pointwise_binding.order() == 1; });

  if (cover.total.order() > 1000) {
    analysis.split = std::nullopt;
    analysis.strongly_split = std::nullopt;
  } else {
    bool found_split = false;
    bool found_strong = false;
    for (const FiniteGroup& K : all_subgroups_up_to_conjugacy(cover.total, 1000)) {
      if (K.order() != cover.base.order()) continue;
      bool meets_kernel = false;
      for (const Permutation& e : K.elements()) {
        if (!e.is_identity() && analysis.kernel.contains(e)) {
          meets_kernel = true;
          break;
        }
      }
      if (meets_kernel) continue;
      std::vector<Permutation> images;
      for (const Permutation& g : K.generators()) {
        images.push_back(base_image(cover, g));
      }
      if (!same_elements(FiniteGroup::from_generators(std::move(images),
                                                      cover.base.degree()),
                         cover.base)) {
        continue;
      }
      found_split = true;
      bool strong = true;
      for (const Permutation& e : K.elements()) {
        const Permutation mu = base_image(cover, e);
        for (std::size_t a = 0; a < fibers.size() && strong; ++a) {
          if (mu(static_cast<std::uint16_t>(a)) != a) continue;
          for (std::uint16_t x : fibers[a]) {
            if (e(x) != x) {
              strong = false;
              break;
            }
          }
        }
        if (!strong) break;
      }
      if (strong) {
        found_strong = true;
        break;
      }
    }
    analysis.split = found_split;
    analysis.strongly_split = found_strong;
  }
  analysis.strongly_trivial =
      analysis.trivial && analysis.strongly_split.value_or(false);
  return analysis;
}

Permutation kappa(const Permutation& sigma,
                  const std::vector<std::uint16_t>& on_base,
                  std::size_t base_size) {
  const std::size_t fiber = sigma.degree();
  std::vector<bool> marked(base_size, false);
  for (std::uint16_t a : on_base) {
    if (a >= base_size) throw OutOfRange("base point beyond the base size");
    marked[a] = true;
  }
  std::vector<std::uint16_t> images(fiber * base_size);
  for (std::size_t a = 0; a < base_size; ++a) {
    for (std::size_t f = 0; f < fiber; ++f) {
      images[a * fiber + f] = static_cast<std::uint16_t>(
          a * fiber + (marked[a] ? sigma(static_cast<std::uint16_t>(f)) : f));
    }
  }
  return Permutation(std::move(images));
}

FiniteGroup kernel_LH(std::size_t fiber_size, const FiniteGroup& H,
                      const FiniteGroup& L, std::size_t base_size) {
  if (H.degree() != fiber_size || L.degree() != fiber_size) {
    throw DegreeMismatch("letter groups must act on the fiber");
  }
  if (base_size == 0) throw OutOfRange("base must be nonempty");
  std::vector<Permutation> gens;
  for (std::uint16_t a = 0; a < base_size; ++a) {
    for (const Permutation& h : H.generators()) {
      gens.push_back(kappa(h, {a}, base_size));
    }
  }
  std::vector<std::uint16_t> everywhere(base_size);
  std::iota(everywhere.begin(), everywhere.end(), 0);
  for (const Permutation& l : L.generators()) {
    gens.push_back(kappa(l, everywhere, base_size));
  }
  return FiniteGroup::from_generators(std::move(gens), fiber_size * base_size);
}

namespace {

// Per-orbit identification of a cover's fibers with the fiber at the least
// orbit point, together with the letter of any element at any point.
struct OrbitFrame {
  std::uint16_t reference = 0;
  std::vector<std::uint16_t> reference_fiber;
  // per base point in the orbit: the image of the reference fiber under the
  // chosen transversal element (an ordered list of domain points).
  std::unordered_map<std::uint16_t, std::vector<std::uint16_t>> ident;
};

OrbitFrame make_frame(const FiniteCover& cover,
                      const std::vector<std::vector<std::uint16_t>>& fibers,
                      const std::vector<std::uint16_t>& orbit) {
  OrbitFrame frame;
  frame.reference = orbit.front();
  frame.reference_fiber = fibers[frame.reference];
  for (std::uint16_t a : orbit) {
    if (a == frame.reference) {
      frame.ident.emplace(a, frame.reference_fiber);
      continue;
    }
    for (const Permutation& e : cover.total.elements()) {
      if (base_image(cover, e)(frame.reference) != a) continue;
      std::vector<std::uint16_t> images;
      images.reserve(frame.reference_fiber.size());
      for (std::uint16_t p : frame.reference_fiber) images.push_back(e(p));
      frame.ident.emplace(a, std::move(images));
      break;
    }
  }
  return frame;
}

// The letter of g at base point a, written on reference-fiber positions.
Permutation frame_letter(const FiniteCover& cover, const OrbitFrame& frame,
                         const Permutation& g, std::uint16_t a,
                         std::uint16_t target) {
  const std::vector<std::uint16_t>& from = frame.ident.at(a);
  const std::vector<std::uint16_t>& to = frame.ident.at(target);
  std::vector<int> to_position(cover.total.degree(), -1);
  for (std::size_t i = 0; i < to.size(); ++i) to_position[to[i]] = static_cast<int>(i);
  std::vector<std::uint16_t> images(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    const int pos = to_position[g(from[i])];
    if (pos < 0) throw InvalidCover("element does not respect the fibers");
    images[i] = static_cast<std::uint16_t>(pos);
  }
  return Permutation(std::move(images));
}

FiniteGroup fiber_group_at(const FiniteCover& cover,
                           const std::vector<std::uint16_t>& fiber,
                           std::uint16_t a) {
  const std::vector<int> position = position_index(fiber, cover.total.degree());
  std::vector<Permutation> gens;
  for (const Permutation& e : cover.total.elements()) {
    if (base_image(cover, e)(a) != a) continue;
    Permutation r = restrict_to(e, fiber, position);
    if (!r.is_identity()) gens.push_back(std::move(r));
  }
  return FiniteGroup::from_generators(std::move(gens), fiber.size());
}

FiniteGroup pointwise_binding_at(const FiniteCover& cover,
                                 const std::vector<std::uint16_t>& fiber) {
  const std::vector<int> position = position_index(fiber, cover.total.degree());
  std::vector<Permutation> gens;
  for (const Permutation& e : cover.total.elements()) {
    bool supported = true;
    for (std::uint16_t x = 0; x < cover.total.degree() && supported; ++x) {
      if (position[x] < 0 && e(x) != x) supported = false;
    }
    if (!supported) continue;
    Permutation r = restrict_to(e, fiber, position);
    if (!r.is_identity()) gens.push_back(std::move(r));
  }
  return FiniteGroup::from_generators(std::move(gens), fiber.size());
}

}  // namespace

FiniteCover build_lift(const FiniteCover& gtilde, const DescentData& descent) {
  require_valid_cover(gtilde);
  if (descent.entry_of.size() != gtilde.base.degree()) {
    throw InconsistentDescent("descent data does not cover the base");
  }
  const std::vector<std::vector<std::uint16_t>> fibers = fibers_of(gtilde);
  for (const auto& fiber : fibers) {
    if (pointwise_binding_at(gtilde, fiber).order() != 1) {
      throw InvalidCover("the reference cover is not linked");
    }
  }
  const std::vector<std::vector<std::uint16_t>> orbits = base_orbits(gtilde.base);

  // Validate each entry against its orbit and prepare preimage tables.
  struct OrbitPlan {
    OrbitFrame frame;
    const DescentEntry* entry = nullptr;
    std::unordered_map<Permutation, Permutation, PermutationHash> preimage;
  };
  std::vector<OrbitPlan> plans;
  std::vector<int> plan_of(gtilde.base.degree(), -1);
  for (const std::vector<std::uint16_t>& orbit : orbits) {
    const std::size_t entry_index = descent.entry_of[orbit.front()];
    for (std::uint16_t a : orbit) {
      if (descent.entry_of[a] != entry_index) {
        throw InconsistentDescent("descent data varies along a base orbit");
      }
    }
    if (entry_index >= descent.entries.size()) {
      throw InconsistentDescent("descent entry index out of range");
    }
    OrbitPlan plan;
    plan.entry = &descent.entries[entry_index];
    plan.frame = make_frame(gtilde, fibers, orbit);

    const FiniteGroup& F = plan.entry->F;
    const FiniteGroup& B = plan.entry->B;
    if (B.degree() != F.degree()) {
      throw InconsistentDescent("descent kernel acts on the wrong domain");
    }
    const GroupRelations bf = group_relations(B, F);
    if (!bf.is_subgroup || !bf.is_normal) {
      throw InconsistentDescent("descent kernel is not normal in its group");
    }
    const std::size_t reference_size = plan.frame.reference_fiber.size();
    if (plan.entry->phi.size() != F.generators().size()) {
      throw InconsistentDescent("descent map must list one image per generator");
    }
    for (const Permutation& image : plan.entry->phi) {
      if (image.degree() != reference_size) {
        throw InconsistentDescent("descent image degree does not match the reference fiber");
      }
    }
    // The graph of phi inside F x (reference fiber group) proves phi is a
    // homomorphism and yields preimages.
    std::vector<Permutation> graph_gens;
    for (std::size_t i = 0; i < plan.entry->phi.size(); ++i) {
      std::vector<std::uint16_t> images(F.degree() + reference_size);
      const Permutation& f = F.generators()[i];
      for (std::uint16_t p = 0; p < F.degree(); ++p) images[p] = f(p);
      for (std::uint16_t p = 0; p < reference_size; ++p) {
        images[F.degree() + p] =
            static_cast<std::uint16_t>(F.degree() + plan.entry->phi[i](p));
      }
      graph_gens.emplace_back(std::move(images));
    }
    const FiniteGroup graph =
        FiniteGroup::closure(std::move(graph_gens), F.degree() + reference_size);
    if (graph.order() != F.order()) {
      throw InconsistentDescent("generator images do not define a homomorphism");
    }
    const FiniteGroup reference_group =
        fiber_group_at(gtilde, plan.frame.reference_fiber, plan.frame.reference);
    const FiniteGroup phi_image = FiniteGroup::from_generators(
        std::vector<Permutation>(plan.entry->phi), reference_size);
    if (!same_elements(phi_image, reference_group)) {
      throw InconsistentDescent("descent map does not cover the reference fiber group");
    }
    std::vector<Permutation> phi_kernel;
    for (const Permutation& pair : graph.elements()) {
      std::vector<std::uint16_t> left(F.degree()), right(reference_size);
      bool trailing_identity = true;
      for (std::uint16_t p = 0; p < reference_size; ++p) {
        if (pair(static_cast<std::uint16_t>(F.degree() + p)) != F.degree() + p) {
          trailing_identity = false;
        }
      }
      for (std::uint16_t p = 0; p < F.degree(); ++p) left[p] = pair(p);
      for (std::uint16_t p = 0; p < reference_size; ++p) {
        right[p] = static_cast<std::uint16_t>(
            pair(static_cast<std::uint16_t>(F.degree() + p)) - F.degree());
      }
      Permutation first(std::move(left));
      Permutation second(std::move(right));
      if (trailing_identity && !first.is_identity()) phi_kernel.push_back(first);
      plan.preimage.emplace(std::move(second), std::move(first));
    }
    if (!same_elements(FiniteGroup::from_generators(std::move(phi_kernel), F.degree()),
                       B)) {
      throw InconsistentDescent("descent kernel differs from B");
    }
    for (std::uint16_t a : orbit) plan_of[a] = static_cast<int>(plans.size());
    plans.push_back(std::move(plan));
  }

  // Domain layout of the lifted cover.
  std::vector<std::size_t> offset(gtilde.base.degree() + 1, 0);
  for (std::size_t a = 0; a < gtilde.base.degree(); ++a) {
    offset[a + 1] = offset[a] + plans[plan_of[a]].entry->F.degree();
  }
  const std::size_t degree = offset.back();
  std::vector<std::uint16_t> pi(degree);
  for (std::size_t a = 0; a < gtilde.base.degree(); ++a) {
    for (std::size_t y = offset[a]; y < offset[a + 1]; ++y) {
      pi[y] = static_cast<std::uint16_t>(a);
    }
  }

  std::vector<Permutation> gens;
  // Kernel letters: every generator of B at every base point.
  for (std::size_t a = 0; a < gtilde.base.degree(); ++a) {
    const OrbitPlan& plan = plans[plan_of[a]];
    for (const Permutation& b : plan.entry->B.generators()) {
      std::vector<std::uint16_t> images(degree);
      std::iota(images.begin(), images.end(), 0);
      for (std::size_t y = 0; y < plan.entry->F.degree(); ++y) {
        images[offset[a] + y] = static_cast<std::uint16_t>(
            offset[a] + b(static_cast<std::uint16_t>(y)));
      }
      gens.emplace_back(std::move(images));
    }
  }
  // One lift per generator of the reference cover.
  for (const Permutation& g : gtilde.total.generators()) {
    const Permutation mu = base_image(gtilde, g);
    std::vector<std::uint16_t> images(degree);
    for (std::uint16_t a = 0; a < gtilde.base.degree(); ++a) {
      const OrbitPlan& plan = plans[plan_of[a]];
      const std::uint16_t target = mu(a);
      const Permutation letter = frame_letter(gtilde, plan.frame, g, a, target);
      const auto it = plan.preimage.find(letter);
      if (it == plan.preimage.end()) {
        throw InconsistentDescent("descent map does not cover the reference fiber group");
      }
      for (std::size_t y = 0; y < plan.entry->F.degree(); ++y) {
        images[offset[a] + y] = static_cast<std::uint16_t>(
            offset[target] + it->second(static_cast<std::uint16_t>(y)));
      }
    }
    gens.emplace_back(std::move(images));
  }

  FiniteCover lifted;
  lifted.total = FiniteGroup::from_generators(std::move(gens), degree);
  lifted.base = gtilde.base;
  lifted.pi = std::move(pi);
  return lifted;
}

namespace {

// Left cosets of C in F, keyed by their lexicographically least element.
struct CosetTable {
  std::vector<Permutation> reps;  // least element per coset, sorted
  std::unordered_map<Permutation, int, PermutationHash> coset_of;
};

CosetTable coset_table(const FiniteGroup& F, const FiniteGroup& C) {
  CosetTable table;
  std::unordered_map<Permutation, Permutation, PermutationHash> least;
  for (const Permutation& f : F.elements()) {
    Permutation key = f;
    for (const Permutation& c : C.elements()) {
      Permutation candidate = f * c;
      if (candidate < key) key = candidate;
    }
    least.emplace(f, std::move(key));
  }
  std::unordered_map<Permutation, int, PermutationHash> id_of_key;
  for (const Permutation& f : F.elements()) {  // elements are sorted
    const Permutation& key = least.at(f);
    auto [it, inserted] = id_of_key.emplace(key, static_cast<int>(table.reps.size()));
    if (inserted) table.reps.push_back(key);
    table.coset_of.emplace(f, it->second);
  }
  return table;
}

Permutation coset_action(const CosetTable& table, const Permutation& f) {
  std::vector<std::uint16_t> images(table.reps.size());
  for (std::size_t j = 0; j < table.reps.size(); ++j) {
    images[j] = static_cast<std::uint16_t>(table.coset_of.at(f * table.reps[j]));
  }
  return Permutation(std::move(images));
}

// The normal core of C in F: the largest F-normal subgroup inside C.
FiniteGroup normal_core(const FiniteGroup& F, const FiniteGroup& C) {
  std::vector<Permutation> kept;
  for (const Permutation& x : C.elements()) {
    bool inside = true;
    for (const Permutation& f : F.elements()) {
      if (!C.contains(f * x * f.inverse())) {
        inside = false;
        break;
      }
    }
    if (inside && !x.is_identity()) kept.push_back(x);
  }
  return FiniteGroup::from_generators(std::move(kept), C.degree());
}

}  // namespace

std::pair<FiniteCover, DescentData> decompose(const FiniteCover& cover) {
  require_valid_cover(cover);
  const std::vector<std::vector<std::uint16_t>> fibers = fibers_of(cover);
  const std::vector<std::vector<std::uint16_t>> orbits = base_orbits(cover.base);

  DescentData descent;
  descent.entry_of.assign(cover.base.degree(), 0);

  struct OrbitQuotient {
    OrbitFrame frame;
    CosetTable cosets;
  };
  std::vector<OrbitQuotient> quotients;

  for (const std::vector<std::uint16_t>& orbit : orbits) {
    OrbitQuotient q;
    q.frame = make_frame(cover, fibers, orbit);
    const FiniteGroup F = fiber_group_at(cover, q.frame.reference_fiber,
                                         q.frame.reference);
    const FiniteGroup B = pointwise_binding_at(cover, q.frame.reference_fiber);

    // Default: regular action on the cosets of B.  When the quotient is
    // large, prefer the smallest faithful coset action available.
    FiniteGroup chosen = B;
    std::uint64_t best_index = F.order() / B.order();
    if (best_index > 5) {
      try {
        for (const FiniteGroup& C : all_subgroups_up_to_conjugacy(F, 1000)) {
          if (C.order() <= B.order() || F.order() / C.order() >= best_index) continue;
          bool contains_b = true;
          for (const Permutation& b : B.generators()) {
            if (!C.contains(b)) {
              contains_b = false;
              break;
            }
          }
          if (!contains_b) continue;
          if (same_elements(normal_core(F, C), B)) {
            chosen = C;
            best_index = F.order() / C.order();
          }
        }
      } catch (const LimitExceeded&) {
        // Fall back to the regular quotient action.
      }
    }
    q.cosets = coset_table(F, chosen);

    DescentEntry entry;
    entry.B = B;
    entry.F = F;
    for (const Permutation& f : F.generators()) {
      entry.phi.push_back(coset_action(q.cosets, f));
    }
    for (std::uint16_t a : orbit) {
      descent.entry_of[a] = descent.entries.size();
    }
    descent.entries.push_back(std::move(entry));
    quotients.push_back(std::move(q));
  }

  // Quotient cover: every fiber replaced by the coset space of its orbit.
  std::vector<int> quotient_of(cover.base.degree(), -1);
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    for (std::uint16_t a : orbits[i]) quotient_of[a] = static_cast<int>(i);
  }
  std::vector<std::size_t> offset(cover.base.degree() + 1, 0);
  for (std::size_t a = 0; a < cover.base.degree(); ++a) {
    offset[a + 1] = offset[a] + quotients[quotient_of[a]].cosets.reps.size();
  }
  const std::size_t degree = offset.back();
  std::vector<std::uint16_t> pi(degree);
  for (std::size_t a = 0; a < cover.base.degree(); ++a) {
    for (std::size_t y = offset[a]; y < offset[a + 1]; ++y) {
      pi[y] = static_cast<std::uint16_t>(a);
    }
  }
  std::vector<Permutation> gens;
  for (const Permutation& g : cover.total.generators()) {
    const Permutation mu = base_image(cover, g);
    std::vector<std::uint16_t> images(degree);
    for (std::uint16_t a = 0; a < cover.base.degree(); ++a) {
      const OrbitQuotient& q = quotients[quotient_of[a]];
      const std::uint16_t target = mu(a);
      const Permutation letter = frame_letter(cover, q.frame, g, a, target);
      for (std::size_t j = 0; j < q.cosets.reps.size(); ++j) {
        images[offset[a] + j] = static_cast<std::uint16_t>(
            offset[target] + q.cosets.coset_of.at(letter * q.cosets.reps[j]));
      }
    }
    gens.emplace_back(std::move(images));
  }

  FiniteCover quotient;
  quotient.total = FiniteGroup::from_generators(std::move(gens), degree);
  quotient.base = cover.base;
  quotient.pi = std::move(pi);
  return {std::move(quotient), std::move(descent)};
}

std::string descent_to_json(const DescentData& d) {
  nlohmann::json out;
  out["entries"] = nlohmann::json::array();
  for (const DescentEntry& entry : d.entries) {
    nlohmann::json e;
    e["B"] = nlohmann::json::parse(group_to_json(entry.B));
    e["F"] = nlohmann::json::parse(group_to_json(entry.F));
    e["phi"] = nlohmann::json::array();
    for (const Permutation& p : entry.phi) e["phi"].push_back(p.images());
    out["entries"].push_back(std::move(e));
  }
  out["entry_of"] = d.entry_of;
  return out.dump();
}

DescentData descent_from_json(const std::string& text) {
  nlohmann::json in;
  try {
    in = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid descent json: ") + e.what());
  }
  if (!in.is_object() || !in.contains("entries") || !in.contains("entry_of")) {
    throw ParseError("descent json must carry entries and entry_of");
  }
  DescentData d;
  for (const nlohmann::json& e : in["entries"]) {
    DescentEntry entry;
    entry.B = group_from_json(e.at("B").dump());
    entry.F = group_from_json(e.at("F").dump());
    for (const nlohmann::json& p : e.at("phi")) {
      entry.phi.emplace_back(p.get<std::vector<std::uint16_t>>());
    }
    d.entries.push_back(std::move(entry));
  }
  d.entry_of = in["entry_of"].get<std::vector<std::size_t>>();
  return d;
}

FiniteGroup g_cal(const FiniteGroup& head, const std::vector<GCalPart>& parts,
                  std::size_t t) {
  if (t == 0) throw OutOfRange("truncation must be positive");
  if (parts.empty()) throw ValidationError("at least the distinguished part is required");
  if (parts.front().group.order() != 1) {
    throw ValidationError("the distinguished part must carry the identity group");
  }
  std::vector<int> part_of(head.degree(), -1);
  std::vector<std::vector<int>> slot_of(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].group.degree() != parts[i].points.size()) {
      throw ValidationError("a part group does not act on its own points");
    }
    slot_of[i].assign(head.degree(), -1);
    for (std::size_t y = 0; y < parts[i].points.size(); ++y) {
      const std::uint16_t p = parts[i].points[y];
      if (p >= head.degree() || part_of[p] != -1) {
        throw ValidationError("part domains must partition the head domain");
      }
      part_of[p] = static_cast<int>(i);
      slot_of[i][p] = static_cast<int>(y);
    }
  }
  for (int owner : part_of) {
    if (owner == -1) throw ValidationError("part domains must partition the head domain");
  }

  // Layout: the distinguished part once, then t copies of every other part.
  std::vector<std::size_t> block_offset(parts.size(), 0);
  std::size_t degree = parts.front().points.size();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    block_offset[i] = degree;
    degree += t * parts[i].points.size();
  }
  auto point_at = [&](std::size_t i, std::size_t copy, std::size_t y) {
    if (i == 0) return y;
    return block_offset[i] + copy * parts[i].points.size() + y;
  };

  std::vector<Permutation> gens;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::size_t size = parts[i].points.size();
    for (const Permutation& n : parts[i].group.generators()) {
      std::vector<std::uint16_t> images(degree);
      std::iota(images.begin(), images.end(), 0);
      for (std::size_t y = 0; y < size; ++y) {
        images[point_at(i, 0, y)] = static_cast<std::uint16_t>(
            point_at(i, 0, n(static_cast<std::uint16_t>(y))));
      }
      gens.emplace_back(std::move(images));
    }
    if (t >= 2) {
      std::vector<std::uint16_t> swap_images(degree);
      std::iota(swap_images.begin(), swap_images.end(), 0);
      for (std::size_t y = 0; y < size; ++y) {
        swap_images[point_at(i, 0, y)] = static_cast<std::uint16_t>(point_at(i, 1, y));
        swap_images[point_at(i, 1, y)] = static_cast<std::uint16_t>(point_at(i, 0, y));
      }
      gens.emplace_back(std::move(swap_images));
    }
    if (t >= 3) {
      std::vector<std::uint16_t> cycle_images(degree);
      std::iota(cycle_images.begin(), cycle_images.end(), 0);
      for (std::size_t copy = 0; copy < t; ++copy) {
        for (std::size_t y = 0; y < size; ++y) {
          cycle_images[point_at(i, copy, y)] =
              static_cast<std::uint16_t>(point_at(i, (copy + 1) % t, y));
        }
      }
      gens.emplace_back(std::move(cycle_images));
    }
  }

  for (const Permutation& h : head.generators()) {
    // h must permute the part domains, keeping the distinguished part fixed.
    std::vector<int> target(parts.size(), -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::uint16_t p : parts[i].points) {
        const int j = part_of[h(p)];
        if (target[i] == -1) target[i] = j;
        if (target[i] != j) {
          throw NotNormalizing("a head generator splits a part domain");
        }
      }
      if (parts[i].points.empty()) target[i] = static_cast<int>(i);
    }
    if (target[0] != 0 && !parts[0].points.empty()) {
      throw NotNormalizing("the head group moves the distinguished part");
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const std::size_t j = static_cast<std::size_t>(target[i]);
      if (j == 0) throw NotNormalizing("a head generator merges parts with the distinguished part");
      // Conjugation must carry the part group onto the target part group.
      for (const Permutation& n : parts[i].group.generators()) {
        std::vector<std::uint16_t> conj(parts[j].points.size());
        for (std::size_t y = 0; y < parts[i].points.size(); ++y) {
          conj[slot_of[j][h(parts[i].points[y])]] = static_cast<std::uint16_t>(
              slot_of[j][h(parts[i].points[n(static_cast<std::uint16_t>(y))])]);
        }
        if (!parts[j].group.contains(Permutation(std::move(conj)))) {
          throw NotNormalizing("a head generator does not conjugate a part group onto its image");
        }
      }
      if (parts[i].group.order() != parts[j].group.order()) {
        throw NotNormalizing("a head generator does not conjugate a part group onto its image");
      }
    }
    std::vector<std::uint16_t> images(degree);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const std::size_t j = static_cast<std::size_t>(target[i]);
      const std::size_t copies = i == 0 ? 1 : t;
      for (std::size_t copy = 0; copy < copies; ++copy) {
        for (std::size_t y = 0; y < parts[i].points.size(); ++y) {
          images[point_at(i, copy, y)] = static_cast<std::uint16_t>(
              point_at(j, copy, slot_of[j][h(parts[i].points[y])]));
        }
      }
    }
    gens.emplace_back(std::move(images));
  }

  return FiniteGroup::from_generators(std::move(gens), degree);
}

OmegaPartitionReport verify_omega_partition(const FiniteGroup& G,
                                            const std::vector<std::uint16_t>& K,
                                            const CongruencePartition& nabla,
                                            const CongruencePartition& delta,
                                            std::size_t t) {
  OmegaPartitionReport report;
  auto fail = [&](const std::string& what) {
    report.passed = false;
    report.failures.push_back(what);
  };
  if (nabla.degree != G.degree() || delta.degree != G.degree()) {
    fail("partition degrees do not match the group");
    return report;
  }
  std::vector<bool> in_K(G.degree(), false);
  for (std::uint16_t p : K) {
    if (p >= G.degree()) {
      fail("K contains a point beyond the degree");
      return report;
    }
    in_K[p] = true;
  }
  for (const Permutation& g : G.generators()) {
    for (std::uint16_t p = 0; p < G.degree(); ++p) {
      if (in_K[p] != in_K[g(p)]) {
        fail("K is not invariant");
        break;
      }
    }
    if (!report.passed) break;
  }
  auto restricted_congruence = [&](const CongruencePartition& part) {
    for (const Permutation& g : G.generators()) {
      for (std::uint16_t p = 0; p < G.degree(); ++p) {
        for (std::uint16_t q = static_cast<std::uint16_t>(p + 1); q < G.degree(); ++q) {
          if (in_K[p] || in_K[q]) continue;
          if (part.class_of[p] == part.class_of[q] &&
              part.class_of[g(p)] != part.class_of[g(q)]) {
            return false;
          }
        }
      }
    }
    return true;
  };
  if (!restricted_congruence(delta)) fail("delta is not a congruence off K");
  if (!restricted_congruence(nabla)) fail("nabla is not a congruence off K");
  for (std::uint16_t p = 0; p < G.degree(); ++p) {
    for (std::uint16_t q = static_cast<std::uint16_t>(p + 1); q < G.degree(); ++q) {
      if (in_K[p] || in_K[q]) continue;
      if (delta.class_of[p] == delta.class_of[q] &&
          nabla.class_of[p] != nabla.class_of[q]) {
        fail("delta does not refine nabla");
        p = G.degree();
        break;
      }
    }
  }

  // Group the complement of K by nabla class.
  std::unordered_map<int, std::vector<std::uint16_t>> nabla_classes;
  for (std::uint16_t p = 0; p < G.degree(); ++p) {
    if (!in_K[p]) nabla_classes[nabla.class_of[p]].push_back(p);
  }
  std::uint64_t t_factorial = 1;
  for (std::size_t i = 2; i <= t; ++i) t_factorial *= i;
  std::vector<int> sorted_keys;
  for (const auto& [key, pts] : nabla_classes) sorted_keys.push_back(key);
  std::sort(sorted_keys.begin(), sorted_keys.end());
  for (int key : sorted_keys) {
    const std::vector<std::uint16_t>& C = nabla_classes[key];
    std::vector<int> delta_ids;
    for (std::uint16_t p : C) delta_ids.push_back(delta.class_of[p]);
    std::sort(delta_ids.begin(), delta_ids.end());
    delta_ids.erase(std::unique(delta_ids.begin(), delta_ids.end()), delta_ids.end());
    if (delta_ids.size() != t) {
      std::ostringstream out;
      out << "a nabla class is a union of " << delta_ids.size()
          << " delta classes instead of " << t;
      fail(out.str());
      continue;
    }
    // The subgroup supported on C must induce the full symmetric group on
    // the delta classes inside C.
    std::vector<std::uint16_t> outside;
    for (std::uint16_t p = 0; p < G.degree(); ++p) {
      if (std::find(C.begin(), C.end(), p) == C.end()) outside.push_back(p);
    }
    const FiniteGroup supported = pointwise_stabilizer(G, outside);
    const FiniteGroup on_C = restriction(supported, C);
    std::vector<std::vector<std::uint16_t>> classes(t);
    for (std::size_t i = 0; i < C.size(); ++i) {
      const auto slot = std::lower_bound(delta_ids.begin(), delta_ids.end(),
                                         delta.class_of[C[i]]) -
                        delta_ids.begin();
      classes[slot].push_back(static_cast<std::uint16_t>(i));
    }
    const CongruencePartition partition = partition_from_classes(classes, C.size());
    const QuotientData quotient = quotient_by_congruence(on_C, partition);
    if (quotient.group.order() != t_factorial) {
      fail("the supported subgroup does not induce the full symmetric group on a nabla class");
    }
  }
  return report;
}

bool cover_isomorphic(const FiniteCover& a, const FiniteCover& b,
                      std::uint64_t search_cap) {
  if (a.total.degree() != b.total.degree() ||
      a.base.degree() != b.base.degree()) {
    return false;
  }
  if (!same_elements(a.base, b.base)) return false;
  if (a.total.order() != b.total.order()) return false;
  const std::vector<std::vector<std::uint16_t>> fa = fibers_of(a);
  const std::vector<std::vector<std::uint16_t>> fb = fibers_of(b);
  std::uint64_t combinations = 1;
  for (std::size_t p = 0; p < fa.size(); ++p) {
    if (fa[p].size() != fb[p].size()) return false;
    for (std::size_t i = 2; i <= fa[p].size(); ++i) {
      combinations *= i;
      if (combinations > search_cap) {
        throw LimitExceeded("cover isomorphism search exceeds the cap");
      }
    }
  }
  // Odometer over per-fiber bijections.
  std::vector<std::vector<std::uint16_t>> assignment(fa.size());
  for (std::size_t p = 0; p < fa.size(); ++p) {
    assignment[p].resize(fa[p].size());
    std::iota(assignment[p].begin(), assignment[p].end(), 0);
  }
  while (true) {
    std::vector<std::uint16_t> rho(a.total.degree());
    for (std::size_t p = 0; p < fa.size(); ++p) {
      for (std::size_t i = 0; i < fa[p].size(); ++i) {
        rho[fa[p][i]] = fb[p][assignment[p][i]];
      }
    }
    const Permutation rho_perm{std::vector<std::uint16_t>(rho)};
    bool conjugates = true;
    for (const Permutation& g : a.total.generators()) {
      if (!b.total.contains(rho_perm * g * rho_perm.inverse())) {
        conjugates = false;
        break;
      }
    }
    if (conjugates) return true;
    // Advance the odometer.
    std::size_t p = 0;
    while (p < assignment.size() &&
           !std::next_permutation(assignment[p].begin(), assignment[p].end())) {
      ++p;
    }
    if (p == assignment.size()) break;
  }
  return false;
}

}  // namespace qgrowth
