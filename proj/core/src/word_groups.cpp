#include "qgrowth/word_groups.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <utility>

#include <nlohmann/json.hpp>

#include "qgrowth/errors.hpp"

namespace qgrowth {

bool operator==(const WordSymmetry& a, const WordSymmetry& b) {
  return a.position == b.position && a.letter == b.letter;
}

WordSymmetry ws_identity(std::size_t m, std::size_t fiber) {
  WordSymmetry g;
  g.position = Permutation::identity(m);
  g.letter.assign(m, Permutation::identity(fiber));
  return g;
}

WordSymmetry ws_compose(const WordSymmetry& a, const WordSymmetry& b) {
  const std::size_t m = a.position.degree();
  if (b.position.degree() != m || a.letter.size() != m || b.letter.size() != m) {
    throw ValidationError("word symmetries act on different word lengths");
  }
  WordSymmetry g;
  g.position = a.position * b.position;
  g.letter.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    g.letter.push_back(a.letter[b.position.apply(static_cast<std::uint16_t>(j))] *
                       b.letter[j]);
  }
  return g;
}

WordSymmetry ws_inverse(const WordSymmetry& a) {
  const std::size_t m = a.position.degree();
  WordSymmetry g;
  g.position = a.position.inverse();
  g.letter.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    g.letter.push_back(
        a.letter[g.position.apply(static_cast<std::uint16_t>(j))].inverse());
  }
  return g;
}

Permutation ws_as_points(const WordSymmetry& a, std::size_t fiber) {
  const std::size_t m = a.position.degree();
  std::vector<std::uint16_t> images(m * fiber);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t tj = a.position.apply(static_cast<std::uint16_t>(j));
    for (std::size_t p = 0; p < fiber; ++p) {
      images[j * fiber + p] = static_cast<std::uint16_t>(
          tj * fiber + a.letter[j].apply(static_cast<std::uint16_t>(p)));
    }
  }
  return Permutation(std::move(images));
}

namespace {

bool ws_is_identity(const WordSymmetry& g) {
  if (!g.position.is_identity()) return false;
  for (const auto& l : g.letter) {
    if (!l.is_identity()) return false;
  }
  return true;
}

WordSymmetry make_flip(std::size_t m, std::size_t fiber, const Permutation& tau) {
  WordSymmetry g;
  std::vector<std::uint16_t> rev(m);
  for (std::size_t j = 0; j < m; ++j) rev[j] = static_cast<std::uint16_t>(m - 1 - j);
  g.position = Permutation(std::move(rev));
  g.letter.assign(m, tau.padded(fiber));
  return g;
}

WordSymmetry make_turn(std::size_t m, std::size_t fiber, const Permutation& sigma) {
  WordSymmetry g;
  std::vector<std::uint16_t> rot(m);
  for (std::size_t j = 0; j < m; ++j) rot[j] = static_cast<std::uint16_t>((j + 1) % m);
  g.position = Permutation(std::move(rot));
  g.letter.assign(m, Permutation::identity(fiber));
  g.letter[m - 1] = sigma.padded(fiber);
  return g;
}

WordSymmetry make_swap(std::size_t m, std::size_t fiber, std::size_t i) {
  WordSymmetry g = ws_identity(m, fiber);
  std::vector<std::uint16_t> images(m);
  for (std::size_t j = 0; j < m; ++j) images[j] = static_cast<std::uint16_t>(j);
  std::swap(images[i], images[i + 1]);
  g.position = Permutation(std::move(images));
  return g;
}

// Canonical decoration data used by the structural membership test.
struct CanonData {
  std::size_t fiber = 1;
  QReduct base = QReduct::Order;
  FiniteGroup Heff;
  FiniteGroup L;
  std::optional<Permutation> tau;
  std::optional<Permutation> sigma;
};

CanonData make_canon_data(const FiberCoverSpec& spec) {
  const FiberCoverSpec canon = canonical_spec(spec);
  CanonData d;
  d.fiber = canon.fiber_size;
  d.base = canon.base;
  d.Heff = canon.H;
  d.L = canon.L;
  d.tau = canon.flip;
  d.sigma = canon.turn;
  return d;
}

// Position-matching products of canonical flip and turn moves: one candidate
// per realizable position permutation class of the base.
std::vector<WordSymmetry> peel_candidates(const CanonData& d, std::size_t m,
                                          const Permutation& position) {
  std::vector<WordSymmetry> out;
  auto push_if_match = [&](const WordSymmetry& c) {
    if (c.position == position) out.push_back(c);
  };
  const WordSymmetry id = ws_identity(m, d.fiber);
  switch (d.base) {
    case QReduct::Order:
      push_if_match(id);
      break;
    case QReduct::Betw: {
      push_if_match(id);
      if (d.tau) push_if_match(make_flip(m, d.fiber, *d.tau));
      break;
    }
    case QReduct::Cyc:
    case QReduct::Sep: {
      const WordSymmetry turn = make_turn(m, d.fiber, d.sigma.value());
      WordSymmetry power = id;
      for (std::size_t k = 0; k < m; ++k) {
        push_if_match(power);
        if (d.base == QReduct::Sep && d.tau) {
          push_if_match(ws_compose(power, make_flip(m, d.fiber, *d.tau)));
        }
        power = ws_compose(turn, power);
      }
      break;
    }
    case QReduct::Eq: {
      WordSymmetry c = id;
      c.position = position;
      out.push_back(c);
      break;
    }
  }
  return out;
}

bool member_impl(const WordSymmetry& g, const CanonData& d) {
  const std::size_t m = g.position.degree();
  if (g.letter.size() != m) {
    throw ValidationError("word symmetry letter list does not match its length");
  }
  for (const auto& l : g.letter) {
    if (l.degree() != d.fiber) {
      throw ValidationError("word symmetry letters have the wrong degree");
    }
  }
  for (const WordSymmetry& c : peel_candidates(d, m, g.position)) {
    const WordSymmetry y = ws_compose(ws_inverse(c), g);
    // y has identity position; it belongs to the move group iff its letters
    // fill one coset of the effective letter group with value in L.
    if (!d.L.contains(y.letter[0])) continue;
    const Permutation base_inv = y.letter[0].inverse();
    bool ok = true;
    for (std::size_t j = 1; j < m && ok; ++j) {
      ok = d.Heff.contains(base_inv * y.letter[j]);
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::vector<WordSymmetry> word_move_symmetries(const FiberCoverSpec& spec,
                                               std::size_t m) {
  if (m == 0) throw OutOfRange("word length must be positive");
  require_valid(spec);
  const std::size_t fiber = spec.fiber_size;
  std::vector<WordSymmetry> moves;
  for (std::size_t j = 0; j < m; ++j) {
    for (const Permutation& h : spec.H.generators()) {
      WordSymmetry g = ws_identity(m, fiber);
      g.letter[j] = h.padded(fiber);
      if (!ws_is_identity(g)) moves.push_back(std::move(g));
    }
  }
  for (const Permutation& l : spec.L.generators()) {
    WordSymmetry g = ws_identity(m, fiber);
    g.letter.assign(m, l.padded(fiber));
    if (!ws_is_identity(g)) moves.push_back(std::move(g));
  }
  if (spec.flip) {
    WordSymmetry g = make_flip(m, fiber, *spec.flip);
    if (!ws_is_identity(g)) moves.push_back(std::move(g));
  }
  if (spec.turn) {
    WordSymmetry g = make_turn(m, fiber, *spec.turn);
    if (!ws_is_identity(g)) moves.push_back(std::move(g));
  }
  if (spec.base == QReduct::Eq) {
    for (std::size_t i = 0; i + 1 < m; ++i) {
      moves.push_back(make_swap(m, fiber, i));
    }
  }
  return moves;
}

FiniteGroup word_symmetry_group(const FiberCoverSpec& spec, std::size_t m,
                                std::uint64_t order_limit) {
  const std::size_t fiber = spec.fiber_size;
  std::vector<Permutation> gens;
  for (const WordSymmetry& g : word_move_symmetries(spec, m)) {
    gens.push_back(ws_as_points(g, fiber));
  }
  return FiniteGroup::closure(std::move(gens), m * fiber, order_limit);
}

std::uint64_t word_symmetry_order(const FiberCoverSpec& spec, std::size_t m) {
  if (m == 0) throw OutOfRange("word length must be positive");
  const CanonData d = make_canon_data(spec);
  std::vector<Permutation> position_gens;
  for (const WordSymmetry& g : word_move_symmetries(spec, m)) {
    if (!g.position.is_identity()) position_gens.push_back(g.position);
  }
  const std::uint64_t position_count =
      FiniteGroup::closure(std::move(position_gens), m).order();
  const std::uint64_t coset_index = d.L.order() / d.Heff.order();
  const std::uint64_t letter_order = d.Heff.order();
  std::uint64_t total = position_count * coset_index;
  for (std::size_t j = 0; j < m; ++j) {
    if (total > std::numeric_limits<std::uint64_t>::max() / letter_order) {
      throw LimitExceeded("word symmetry order overflows 64 bits");
    }
    total *= letter_order;
  }
  return total;
}

bool word_symmetry_member(const WordSymmetry& g, const FiberCoverSpec& spec) {
  require_valid(spec);
  return member_impl(g, make_canon_data(spec));
}

// ---------------------------------------------------------------------------
// Joint-embedding normality cross-check.

namespace {

// A labeled configuration: letter content masks plus one packed (letter,
// point) slot per tuple position.  Joint states carry two configurations in
// the same word (first half / second half of the slot list).
struct JState {
  std::vector<std::uint16_t> letters;
  std::vector<std::uint8_t> slots;
};

std::string jkey(const JState& s) {
  std::string key;
  key.reserve(1 + 2 * s.letters.size() + s.slots.size());
  key.push_back(static_cast<char>(s.letters.size()));
  for (std::uint16_t mask : s.letters) {
    key.push_back(static_cast<char>(mask & 0xFF));
    key.push_back(static_cast<char>(mask >> 8));
  }
  for (std::uint8_t slot : s.slots) key.push_back(static_cast<char>(slot));
  return key;
}

JState apply_ws(const WordSymmetry& g, const JState& s, std::size_t fiber) {
  const std::size_t m = s.letters.size();
  JState out;
  out.letters.assign(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t tj = g.position.apply(static_cast<std::uint16_t>(j));
    for (std::size_t p = 0; p < fiber; ++p) {
      if (s.letters[j] & (1u << p)) {
        out.letters[tj] |= static_cast<std::uint16_t>(
            1u << g.letter[j].apply(static_cast<std::uint16_t>(p)));
      }
    }
  }
  out.slots.reserve(s.slots.size());
  for (std::uint8_t slot : s.slots) {
    const std::size_t j = slot >> 4;
    const std::uint8_t p = slot & 0x0F;
    out.slots.push_back(static_cast<std::uint8_t>(
        (g.position.apply(static_cast<std::uint16_t>(j)) << 4) |
        g.letter[j].apply(p)));
  }
  return out;
}

// Restriction of a joint state to one embedded configuration: only its
// points survive, empty letters are dropped, letters are renumbered.
JState part_state(const JState& s, std::size_t offset, std::size_t count) {
  std::vector<std::uint16_t> masks(s.letters.size(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t slot = s.slots[offset + i];
    masks[slot >> 4] |= static_cast<std::uint16_t>(1u << (slot & 0x0F));
  }
  std::vector<int> renumber(s.letters.size(), -1);
  JState out;
  for (std::size_t j = 0; j < masks.size(); ++j) {
    if (masks[j] != 0) {
      renumber[j] = static_cast<int>(out.letters.size());
      out.letters.push_back(masks[j]);
    }
  }
  out.slots.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t slot = s.slots[offset + i];
    out.slots.push_back(static_cast<std::uint8_t>(
        (renumber[slot >> 4] << 4) | (slot & 0x0F)));
  }
  return out;
}

nlohmann::json jstate_json(const JState& s, std::size_t split) {
  nlohmann::json word = nlohmann::json::array();
  for (std::uint16_t mask : s.letters) {
    nlohmann::json letter = nlohmann::json::array();
    for (std::size_t p = 0; p < 16; ++p) {
      if (mask & (1u << p)) letter.push_back(p);
    }
    word.push_back(std::move(letter));
  }
  auto slots_json = [&](std::size_t offset, std::size_t count) {
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint8_t slot = s.slots[offset + i];
      list.push_back({slot >> 4, slot & 0x0F});
    }
    return list;
  };
  nlohmann::json out;
  out["word"] = std::move(word);
  out["first"] = slots_json(0, split);
  out["second"] = slots_json(split, s.slots.size() - split);
  return out;
}

// One enumerated, move-closed state space together with a key index.
struct JSpace {
  std::size_t split = 0;  // tuple positions per embedded configuration
  std::vector<JState> states;
  std::unordered_map<std::string, std::size_t> index;

  void finish() {
    index.reserve(states.size() * 2);
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(jkey(states[i]), i);
  }
};

std::vector<std::uint8_t> word_slots(const std::vector<std::uint16_t>& letters) {
  std::vector<std::uint8_t> slots;
  for (std::size_t j = 0; j < letters.size(); ++j) {
    for (std::size_t p = 0; p < 16; ++p) {
      if (letters[j] & (1u << p)) {
        slots.push_back(static_cast<std::uint8_t>((j << 4) | p));
      }
    }
  }
  return slots;
}

void enumerate_words(std::size_t fiber, std::size_t total,
                     std::vector<std::uint16_t>& prefix,
                     const std::function<void(const std::vector<std::uint16_t>&)>& emit) {
  if (total == 0) {
    if (!prefix.empty()) emit(prefix);
    return;
  }
  const std::uint16_t full = static_cast<std::uint16_t>((1u << fiber) - 1);
  for (std::uint16_t mask = 1; mask <= full; ++mask) {
    const std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size > total) continue;
    prefix.push_back(mask);
    enumerate_words(fiber, total - size, prefix, emit);
    prefix.pop_back();
  }
}

// All injective n-point configurations: every word of total size n, with the
// n slots assigned to tuple positions in every possible order.
JSpace injective_space(std::size_t fiber, std::size_t n, std::size_t split,
                       std::size_t state_cap) {
  JSpace space;
  space.split = split;
  std::vector<std::uint16_t> prefix;
  enumerate_words(fiber, n, prefix, [&](const std::vector<std::uint16_t>& letters) {
    std::vector<std::uint8_t> slots = word_slots(letters);
    std::sort(slots.begin(), slots.end());
    do {
      if (space.states.size() >= state_cap) {
        throw LimitExceeded("joint state space exceeds the state cap");
      }
      space.states.push_back(JState{letters, slots});
    } while (std::next_permutation(slots.begin(), slots.end()));
  });
  space.finish();
  return space;
}

// Two-letter words with both letters of size k, each embedded configuration
// filling one letter.  This shape carries the single-support witnesses that
// distinguish letter groups on full letter contents.
JSpace paired_letter_space(std::size_t fiber, std::size_t k, std::size_t state_cap) {
  JSpace space;
  space.split = k;
  const std::uint16_t full = static_cast<std::uint16_t>((1u << fiber) - 1);
  std::vector<std::uint16_t> masks;
  for (std::uint16_t mask = 1; mask <= full; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) == k) masks.push_back(mask);
  }
  for (std::uint16_t a : masks) {
    for (std::uint16_t b : masks) {
      const std::vector<std::uint16_t> letters = {a, b};
      // Either configuration may occupy either letter (flip and turn moves
      // exchange the two letters, so both assignments must be states).
      for (int first_letter = 0; first_letter < 2; ++first_letter) {
        std::vector<std::uint8_t> head, tail;
        for (std::size_t p = 0; p < fiber; ++p) {
          const std::uint16_t mask0 = first_letter == 0 ? a : b;
          const std::uint16_t mask1 = first_letter == 0 ? b : a;
          const std::uint8_t base0 = static_cast<std::uint8_t>(first_letter << 4);
          const std::uint8_t base1 = static_cast<std::uint8_t>((1 - first_letter) << 4);
          if (mask0 & (1u << p)) head.push_back(static_cast<std::uint8_t>(base0 | p));
          if (mask1 & (1u << p)) tail.push_back(static_cast<std::uint8_t>(base1 | p));
        }
        std::sort(head.begin(), head.end());
        do {
          std::vector<std::uint8_t> second = tail;
          std::sort(second.begin(), second.end());
          do {
            if (space.states.size() >= state_cap) {
              throw LimitExceeded("joint state space exceeds the state cap");
            }
            JState s;
            s.letters = letters;
            s.slots = head;
            s.slots.insert(s.slots.end(), second.begin(), second.end());
            space.states.push_back(std::move(s));
          } while (std::next_permutation(second.begin(), second.end()));
        } while (std::next_permutation(head.begin(), head.end()));
      }
    }
  }
  space.finish();
  return space;
}

std::vector<int> color_components(
    const JSpace& space, std::size_t fiber,
    const std::vector<std::vector<WordSymmetry>>& moves_by_m) {
  std::vector<int> color(space.states.size(), -1);
  int next = 0;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < space.states.size(); ++start) {
    if (color[start] != -1) continue;
    color[start] = next;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      const JState& s = space.states[i];
      for (const WordSymmetry& g : moves_by_m[s.letters.size()]) {
        const JState image = apply_ws(g, s, fiber);
        const auto it = space.index.find(jkey(image));
        if (it == space.index.end()) {
          throw ValidationError("a word move left the enumerated state space");
        }
        if (color[it->second] == -1) {
          color[it->second] = next;
          queue.push_back(it->second);
        }
      }
    }
    ++next;
  }
  return color;
}

}  // namespace

// Shared per-fiber enumeration of the joint state spaces, plus the
// standalone spaces the embedded configurations project into.
struct WordNormalityChecker::FiberSpaces {
  std::size_t fiber = 1;
  // part_spaces[k] : all injective k-point configurations (k = 1..4).
  std::map<std::size_t, JSpace> part_spaces;
  // Joint spaces scanned by the invariance test.
  std::vector<JSpace> joint_spaces;
};

struct WordNormalityChecker::SpecTables {
  FiberCoverSpec spec;
  CanonData canon;
  // moves_by_m[m] : the move symmetries of the raw spec at word length m.
  std::vector<std::vector<WordSymmetry>> moves_by_m;
  // Orbit class of every standalone configuration, per tuple size.
  std::map<std::size_t, std::vector<int>> part_class;
  // For every joint space: the pair of part classes per state, and the
  // component of the state under this spec's moves.
  std::vector<std::vector<std::pair<int, int>>> joint_part_classes;
  std::vector<std::vector<int>> joint_components;
};

WordNormalityChecker::WordNormalityChecker(std::size_t m_max, std::size_t state_cap)
    : m_max_(m_max == 0 ? 1 : m_max), state_cap_(state_cap) {}

const WordNormalityChecker::FiberSpaces& WordNormalityChecker::spaces_for(
    std::size_t fiber) {
  auto it = spaces_.find(fiber);
  if (it != spaces_.end()) return *it->second;
  auto spaces = std::make_shared<FiberSpaces>();
  spaces->fiber = fiber;
  // Split sizes actually used by the joint spaces below.
  const std::size_t part_max = fiber <= 4 ? std::max<std::size_t>(2, fiber) : 2;
  for (std::size_t k = 1; k <= part_max; ++k) {
    spaces->part_spaces.emplace(k, injective_space(fiber, k, k, state_cap_));
  }
  spaces->joint_spaces.push_back(injective_space(fiber, 2, 1, state_cap_));
  spaces->joint_spaces.push_back(injective_space(fiber, 4, 2, state_cap_));
  if (fiber <= 4) {
    for (std::size_t k = 3; k <= fiber; ++k) {
      spaces->joint_spaces.push_back(paired_letter_space(fiber, k, state_cap_));
    }
  }
  it = spaces_.emplace(fiber, std::move(spaces)).first;
  return *it->second;
}

WordNormalityChecker::SpecTables& WordNormalityChecker::tables_for(
    const FiberCoverSpec& spec) {
  const std::string key = spec_to_json(spec);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;

  require_valid(spec);
  auto tables = std::make_shared<SpecTables>();
  tables->spec = spec;
  tables->canon = make_canon_data(spec);
  const FiberSpaces& spaces = spaces_for(spec.fiber_size);

  std::size_t longest = std::max<std::size_t>(m_max_, 4);
  tables->moves_by_m.resize(longest + 1);
  for (std::size_t m = 1; m <= longest; ++m) {
    tables->moves_by_m[m] = word_move_symmetries(spec, m);
  }

  for (const auto& [k, space] : spaces.part_spaces) {
    tables->part_class.emplace(
        k, color_components(space, spec.fiber_size, tables->moves_by_m));
  }
  for (const JSpace& space : spaces.joint_spaces) {
    tables->joint_components.push_back(
        color_components(space, spec.fiber_size, tables->moves_by_m));
    const std::vector<int>& classes = tables->part_class.at(space.split);
    const JSpace& part_space = spaces.part_spaces.at(space.split);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(space.states.size());
    for (const JState& s : space.states) {
      const JState first = part_state(s, 0, space.split);
      const JState second = part_state(s, space.split, space.split);
      pairs.emplace_back(classes[part_space.index.at(jkey(first))],
                         classes[part_space.index.at(jkey(second))]);
    }
    tables->joint_part_classes.push_back(std::move(pairs));
  }

  it = cache_.emplace(key, std::move(tables)).first;
  return *it->second;
}

WordPairReport WordNormalityChecker::check(const FiberCoverSpec& specN,
                                           const FiberCoverSpec& specG) {
  require_valid(specN);
  require_valid(specG);
  if (specN.fiber_size != specG.fiber_size) {
    throw FiberMismatch("fiber sizes differ");
  }
  SpecTables& tn = tables_for(specN);
  SpecTables& tg = tables_for(specG);

  WordPairReport report;
  for (std::size_t m = 1; m <= m_max_; ++m) {
    for (std::size_t i = 0; i < tn.moves_by_m[m].size(); ++i) {
      if (!member_impl(tn.moves_by_m[m][i], tg.canon)) {
        report.is_subgroup = false;
        report.is_normal = false;
        std::ostringstream out;
        out << "move " << i << " of N at word length " << m
            << " is not a word symmetry of G";
        report.detail = out.str();
        return report;
      }
    }
  }
  for (std::size_t m = 1; m <= m_max_; ++m) {
    for (std::size_t bi = 0; bi < tg.moves_by_m[m].size(); ++bi) {
      const WordSymmetry& b = tg.moves_by_m[m][bi];
      const WordSymmetry b_inv = ws_inverse(b);
      for (std::size_t ai = 0; ai < tn.moves_by_m[m].size(); ++ai) {
        const WordSymmetry conj =
            ws_compose(b_inv, ws_compose(tn.moves_by_m[m][ai], b));
        if (!member_impl(conj, tn.canon)) {
          report.is_normal = false;
          std::ostringstream out;
          out << "conjugating move " << ai << " of N by move " << bi
              << " of G at word length " << m
              << " leaves the word symmetries of N";
          report.detail = out.str();
          return report;
        }
      }
    }
  }

  // G-moves must preserve orbit equivalence of the two embedded
  // configurations; a violation exhibits a conjugation witness supported at
  // one configuration only.
  const FiberSpaces& spaces = spaces_for(specN.fiber_size);
  for (std::size_t si = 0; si < spaces.joint_spaces.size(); ++si) {
    const JSpace& space = spaces.joint_spaces[si];
    const std::vector<int>& comp = tg.joint_components[si];
    const std::vector<std::pair<int, int>>& classes = tn.joint_part_classes[si];
    std::unordered_map<int, std::size_t> first_seen;
    for (std::size_t i = 0; i < space.states.size(); ++i) {
      const bool equal_here = classes[i].first == classes[i].second;
      auto [it, inserted] = first_seen.emplace(comp[i], i);
      if (inserted) continue;
      const std::size_t j = it->second;
      const bool equal_there = classes[j].first == classes[j].second;
      if (equal_here != equal_there) {
        report.is_normal = false;
        nlohmann::json witness;
        witness["state_a"] = jstate_json(space.states[j], space.split);
        witness["state_b"] = jstate_json(space.states[i], space.split);
        std::ostringstream out;
        out << "orbit equivalence under N is not preserved along the moves of G: "
            << witness.dump();
        report.detail = out.str();
        return report;
      }
    }
  }
  return report;
}

}  // namespace qgrowth
