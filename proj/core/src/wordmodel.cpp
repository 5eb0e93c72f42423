#include "qgrowth/wordmodel.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qgrowth/errors.hpp"

namespace qgrowth {

namespace {

// Packed state: letters as fiber-point bitmasks plus the optional tuple
// slots, one byte (letter << 4 | point) per tuple position.
struct State {
  std::vector<std::uint16_t> letters;
  std::vector<std::uint8_t> slots;
};

std::string state_key(const State& s) {
  std::string key;
  key.reserve(s.letters.size() * 2 + s.slots.size() + 1);
  for (auto m : s.letters) {
    key.push_back(static_cast<char>(m & 0xFF));
    key.push_back(static_cast<char>(m >> 8));
  }
  key.push_back(static_cast<char>(0xFF));
  for (auto b : s.slots) key.push_back(static_cast<char>(b));
  return key;
}

struct MoveContext {
  std::size_t fiber = 1;
  std::vector<Permutation> per_letter;  // H generators
  std::vector<Permutation> global;      // L generators
  std::optional<Permutation> flip;
  std::optional<Permutation> turn;
  bool shuffle = false;
};

MoveContext make_moves(const FiberCoverSpec& spec) {
  require_valid(spec);
  if (spec.fiber_size > 9)
    throw LimitExceeded("word model supports fiber sizes up to 9");
  MoveContext ctx;
  ctx.fiber = spec.fiber_size;
  for (const auto& h : spec.H.generators())
    if (!h.is_identity()) ctx.per_letter.push_back(h);
  for (const auto& l : spec.L.generators())
    if (!l.is_identity()) ctx.global.push_back(l);
  ctx.flip = spec.flip;
  ctx.turn = spec.turn;
  ctx.shuffle = spec.base == QReduct::Eq;
  return ctx;
}

std::uint16_t apply_mask(const Permutation& p, std::uint16_t mask) {
  std::uint16_t out = 0;
  for (std::uint16_t b = 0; (mask >> b) != 0; ++b)
    if (mask & (1u << b)) out |= static_cast<std::uint16_t>(1u << p.apply(b));
  return out;
}

template <typename Emit>
void for_each_neighbor(const State& s, const MoveContext& ctx, Emit&& emit) {
  const std::size_t m = s.letters.size();
  if (m == 0) return;
  for (std::size_t j = 0; j < m; ++j)
    for (const auto& h : ctx.per_letter) {
      State t = s;
      t.letters[j] = apply_mask(h, t.letters[j]);
      for (auto& b : t.slots)
        if (static_cast<std::size_t>(b >> 4) == j)
          b = static_cast<std::uint8_t>((j << 4) | h.apply(b & 15));
      emit(std::move(t));
    }
  for (const auto& l : ctx.global) {
    State t = s;
    for (auto& mask : t.letters) mask = apply_mask(l, mask);
    for (auto& b : t.slots)
      b = static_cast<std::uint8_t>((b & 0xF0) | l.apply(b & 15));
    emit(std::move(t));
  }
  if (ctx.flip) {
    const auto& tau = *ctx.flip;
    State t;
    t.letters.resize(m);
    for (std::size_t j = 0; j < m; ++j)
      t.letters[m - 1 - j] = apply_mask(tau, s.letters[j]);
    t.slots = s.slots;
    for (auto& b : t.slots) {
      const std::size_t j = b >> 4;
      b = static_cast<std::uint8_t>(((m - 1 - j) << 4) | tau.apply(b & 15));
    }
    emit(std::move(t));
  }
  if (ctx.turn) {
    const auto& sigma = *ctx.turn;
    State t;
    t.letters.resize(m);
    t.letters[0] = apply_mask(sigma, s.letters[m - 1]);
    for (std::size_t j = 0; j + 1 < m; ++j) t.letters[j + 1] = s.letters[j];
    t.slots = s.slots;
    for (auto& b : t.slots) {
      const std::size_t j = b >> 4;
      if (j == m - 1)
        b = static_cast<std::uint8_t>(sigma.apply(b & 15));
      else
        b = static_cast<std::uint8_t>(((j + 1) << 4) | (b & 15));
    }
    emit(std::move(t));
  }
  if (ctx.shuffle) {
    for (std::size_t i = 0; i + 1 < m; ++i) {
      State t = s;
      std::swap(t.letters[i], t.letters[i + 1]);
      for (auto& b : t.slots) {
        const std::size_t j = b >> 4;
        if (j == i)
          b = static_cast<std::uint8_t>(((i + 1) << 4) | (b & 15));
        else if (j == i + 1)
          b = static_cast<std::uint8_t>((i << 4) | (b & 15));
      }
      emit(std::move(t));
    }
  }
}

// Every move has finite order, so forward closure under the generators
// already contains all inverses.
std::vector<State> orbit_of(const State& start, const MoveContext& ctx,
                            std::size_t cap) {
  std::vector<State> states{start};
  std::unordered_map<std::string, std::size_t> seen;
  seen.emplace(state_key(start), 0);
  for (std::size_t head = 0; head < states.size(); ++head) {
    const State cur = states[head];  // copy: the vector may reallocate
    for_each_neighbor(cur, ctx, [&](State&& nxt) {
      std::string key = state_key(nxt);
      if (seen.emplace(std::move(key), states.size()).second) {
        states.push_back(std::move(nxt));
        if (states.size() > cap)
          throw LimitExceeded("word orbit exceeds the state cap");
      }
    });
  }
  return states;
}

struct FloodFill {
  std::vector<std::size_t> component;        // per state index
  std::vector<std::size_t> representatives;  // first state of each component
};

FloodFill flood_fill(const std::vector<State>& all, const MoveContext& ctx) {
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(all.size() * 2);
  for (std::size_t i = 0; i < all.size(); ++i)
    index.emplace(state_key(all[i]), i);
  FloodFill out;
  out.component.assign(all.size(), 0);
  std::vector<bool> visited(all.size(), false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (visited[i]) continue;
    const std::size_t comp = out.representatives.size();
    out.representatives.push_back(i);
    visited[i] = true;
    out.component[i] = comp;
    stack.push_back(i);
    while (!stack.empty()) {
      const State cur = all[stack.back()];
      stack.pop_back();
      for_each_neighbor(cur, ctx, [&](State&& nxt) {
        auto it = index.find(state_key(nxt));
        if (it == index.end())
          throw ValidationError("move left the enumerated state space");
        if (!visited[it->second]) {
          visited[it->second] = true;
          out.component[it->second] = comp;
          stack.push_back(it->second);
        }
      });
    }
  }
  return out;
}

// All words with the given total number of points.
std::vector<State> enumerate_words(std::size_t fiber, std::size_t total,
                                   std::size_t cap) {
  std::vector<State> out;
  const std::uint16_t full = static_cast<std::uint16_t>((1u << fiber) - 1);
  State cur;
  std::function<void(std::size_t)> rec = [&](std::size_t remaining) {
    if (remaining == 0) {
      out.push_back(cur);
      if (out.size() > cap)
        throw LimitExceeded("word enumeration exceeds the state cap");
      return;
    }
    for (std::uint16_t mask = 1; mask <= full; ++mask) {
      const std::size_t size = std::popcount(mask);
      if (size > remaining) continue;
      cur.letters.push_back(mask);
      rec(remaining - size);
      cur.letters.pop_back();
    }
  };
  rec(total);
  return out;
}

std::vector<std::uint8_t> slot_list(const State& word) {
  std::vector<std::uint8_t> slots;
  for (std::size_t j = 0; j < word.letters.size(); ++j)
    for (std::uint16_t b = 0; (word.letters[j] >> b) != 0; ++b)
      if (word.letters[j] & (1u << b))
        slots.push_back(static_cast<std::uint8_t>((j << 4) | b));
  return slots;
}

// Labeled states: every bijection (injective) or surjection (general) of
// the n tuple positions onto the slots of each word.
std::vector<State> all_tuple_states(std::size_t fiber, std::size_t n,
                                    bool injective, std::size_t cap) {
  if (n > 15)
    throw LimitExceeded("tuple budget: positions must fit in 15 letters");
  std::vector<State> out;
  auto add = [&](State s) {
    out.push_back(std::move(s));
    if (out.size() > cap)
      throw LimitExceeded("tuple enumeration exceeds the state cap");
  };
  if (n == 0) {
    add(State{});
    return out;
  }
  const std::size_t k_min = injective ? n : 1;
  for (std::size_t k = k_min; k <= n; ++k) {
    for (const auto& word : enumerate_words(fiber, k, cap)) {
      std::vector<std::uint8_t> slots = slot_list(word);
      if (injective) {
        std::sort(slots.begin(), slots.end());
        do {
          State s = word;
          s.slots = slots;
          add(std::move(s));
        } while (std::next_permutation(slots.begin(), slots.end()));
      } else {
        // surjections of positions 0..n-1 onto the k slots
        std::vector<std::uint8_t> assign(n);
        std::vector<std::size_t> uses(slots.size(), 0);
        std::size_t unused = slots.size();
        std::function<void(std::size_t)> rec = [&](std::size_t pos) {
          if (n - pos < unused) return;  // cannot cover the rest
          if (pos == n) {
            State s = word;
            s.slots = assign;
            add(std::move(s));
            return;
          }
          for (std::size_t i = 0; i < slots.size(); ++i) {
            assign[pos] = slots[i];
            if (uses[i]++ == 0) --unused;
            rec(pos + 1);
            if (--uses[i] == 0) ++unused;
          }
        };
        rec(0);
      }
    }
  }
  return out;
}

Word to_word(const State& s) {
  Word w;
  for (auto mask : s.letters) {
    std::vector<std::uint8_t> letter;
    for (std::uint16_t b = 0; (mask >> b) != 0; ++b)
      if (mask & (1u << b)) letter.push_back(static_cast<std::uint8_t>(b));
    w.letters.push_back(std::move(letter));
  }
  return w;
}

LabeledWord to_labeled(const State& s) {
  LabeledWord lw;
  lw.word = to_word(s);
  for (auto b : s.slots)
    lw.labeling.emplace_back(static_cast<std::uint8_t>(b >> 4),
                             static_cast<std::uint8_t>(b & 15));
  return lw;
}

State from_word(const Word& w, std::size_t fiber) {
  State s;
  for (const auto& letter : w.letters) {
    if (letter.empty()) throw ValidationError("word has an empty letter");
    std::uint16_t mask = 0;
    for (auto p : letter) {
      if (p >= fiber)
        throw ValidationError("word letter mentions a point outside the fiber");
      if (mask & (1u << p))
        throw ValidationError("word letter repeats a point");
      mask |= static_cast<std::uint16_t>(1u << p);
    }
    if (!std::is_sorted(letter.begin(), letter.end()))
      throw ValidationError("word letters must be sorted");
    s.letters.push_back(mask);
  }
  return s;
}

State from_labeled(const LabeledWord& lw, std::size_t fiber) {
  State s = from_word(lw.word, fiber);
  if (lw.labeling.size() != lw.word.total_size())
    throw ValidationError("labeling does not cover the word once");
  std::vector<bool> used(16 * s.letters.size(), false);
  for (const auto& [letter, point] : lw.labeling) {
    if (letter >= s.letters.size() || !(s.letters[letter] & (1u << point)))
      throw ValidationError("label points outside the word");
    const std::size_t slot = 16u * letter + point;
    if (used[slot]) throw ValidationError("labeling repeats a slot");
    used[slot] = true;
    s.slots.push_back(static_cast<std::uint8_t>((letter << 4) | point));
  }
  return s;
}

// Restriction of a labeled state to a subset of its tuple positions:
// letters shrink to the points still used and positions renumber in order.
State project(const State& s, const std::vector<std::size_t>& positions) {
  std::vector<std::uint16_t> used(s.letters.size(), 0);
  for (auto i : positions) {
    const auto b = s.slots[i];
    used[b >> 4] |= static_cast<std::uint16_t>(1u << (b & 15));
  }
  State t;
  std::vector<int> letter_map(s.letters.size(), -1);
  for (std::size_t j = 0; j < s.letters.size(); ++j)
    if (used[j]) {
      letter_map[j] = static_cast<int>(t.letters.size());
      t.letters.push_back(used[j]);
    }
  for (auto i : positions) {
    const auto b = s.slots[i];
    t.slots.push_back(
        static_cast<std::uint8_t>((letter_map[b >> 4] << 4) | (b & 15)));
  }
  return t;
}

std::string state_to_json(const State& s) {
  nlohmann::json j;
  j["word"] = nlohmann::json::parse(word_to_json(to_word(s)));
  nlohmann::json labels = nlohmann::json::array();
  for (auto b : s.slots)
    labels.push_back({b >> 4, b & 15});
  j["labels"] = labels;
  return j.dump();
}

}  // namespace

// ---- Word ----

std::size_t Word::total_size() const {
  std::size_t total = 0;
  for (const auto& letter : letters) total += letter.size();
  return total;
}

bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
bool operator<(const Word& a, const Word& b) { return a.letters < b.letters; }

std::string word_to_json(const Word& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& letter : w.letters) {
    nlohmann::json l = nlohmann::json::array();
    for (auto p : letter) l.push_back(p);
    arr.push_back(std::move(l));
  }
  return arr.dump();
}

Word word_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("word json: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("word json: expected an array of letters");
  Word w;
  try {
    for (const auto& l : j) {
      if (!l.is_array()) throw ParseError("word json: letters must be arrays");
      std::vector<std::uint8_t> letter;
      for (const auto& p : l) letter.push_back(p.get<std::uint8_t>());
      w.letters.push_back(std::move(letter));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("word json: ") + e.what());
  }
  return w;
}

bool operator==(const LabeledWord& a, const LabeledWord& b) {
  return a.word == b.word && a.labeling == b.labeling;
}
bool operator<(const LabeledWord& a, const LabeledWord& b) {
  if (a.word.letters != b.word.letters) return a.word < b.word;
  return a.labeling < b.labeling;
}

// ---- canonical forms ----

Word canonical_form(const Word& w, const FiberCoverSpec& spec,
                    std::size_t state_cap) {
  const MoveContext ctx = make_moves(spec);
  const auto orbit = orbit_of(from_word(w, ctx.fiber), ctx, state_cap);
  Word best = to_word(orbit.front());
  for (std::size_t i = 1; i < orbit.size(); ++i) {
    Word cand = to_word(orbit[i]);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

LabeledWord canonical_form(const LabeledWord& w, const FiberCoverSpec& spec,
                           std::size_t state_cap) {
  const MoveContext ctx = make_moves(spec);
  const auto orbit = orbit_of(from_labeled(w, ctx.fiber), ctx, state_cap);
  LabeledWord best = to_labeled(orbit.front());
  for (std::size_t i = 1; i < orbit.size(); ++i) {
    LabeledWord cand = to_labeled(orbit[i]);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

// ---- orbit counting ----

std::uint64_t count_subset_orbits(const FiberCoverSpec& spec, std::size_t n,
                                  std::size_t state_cap) {
  const MoveContext ctx = make_moves(spec);
  const auto states = enumerate_words(ctx.fiber, n, state_cap);
  return flood_fill(states, ctx).representatives.size();
}

std::uint64_t count_tuple_orbits(const FiberCoverSpec& spec, std::size_t n,
                                 bool injective, std::size_t state_cap) {
  const MoveContext ctx = make_moves(spec);
  const auto states = all_tuple_states(ctx.fiber, n, injective, state_cap);
  return flood_fill(states, ctx).representatives.size();
}

// ---- sensitivity ----

WordSensitivityReport atom_sensitivity(const FiberCoverSpec& spec,
                                       std::size_t m, std::size_t n_max,
                                       std::size_t state_cap) {
  if (m == 0) throw OutOfRange("sensitivity requires m >= 1");
  const MoveContext ctx = make_moves(spec);
  WordSensitivityReport report;

  // Canonical component of every m-tuple state, built on first use.
  std::unordered_map<std::string, std::size_t> proj_component;
  auto ensure_projection_space = [&]() {
    if (!proj_component.empty()) return;
    const auto mstates = all_tuple_states(ctx.fiber, m, false, state_cap);
    const auto ff = flood_fill(mstates, ctx);
    for (std::size_t i = 0; i < mstates.size(); ++i)
      proj_component.emplace(state_key(mstates[i]), ff.component[i]);
  };

  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n <= m) {
      report.verified_to = n;
      continue;  // the identity projection separates everything
    }
    ensure_projection_space();
    const auto states = all_tuple_states(ctx.fiber, n, false, state_cap);
    const auto ff = flood_fill(states, ctx);

    // Signature of an orbit: component ids of all increasing m-projections
    // of its representative.  Distinct orbits must get distinct signatures.
    std::map<std::vector<std::size_t>, std::size_t> seen;
    for (const std::size_t rep : ff.representatives) {
      std::vector<std::size_t> signature;
      std::vector<std::size_t> positions(m);
      std::iota(positions.begin(), positions.end(), 0);
      for (;;) {
        signature.push_back(
            proj_component.at(state_key(project(states[rep], positions))));
        // next increasing m-subset of 0..n-1
        std::size_t i = m;
        while (i > 0 && positions[i - 1] == n - m + i - 1) --i;
        if (i == 0) break;
        ++positions[i - 1];
        for (std::size_t j = i; j < m; ++j)
          positions[j] = positions[j - 1] + 1;
      }
      auto [it, inserted] = seen.emplace(std::move(signature), rep);
      if (!inserted) {
        report.is_sensitive = false;
        report.verified_to = n;
        report.witness = {state_to_json(states[it->second]),
                          state_to_json(states[rep])};
        return report;
      }
    }
    report.verified_to = n;
  }
  return report;
}

// ---- finite action on length-m words ----

FiniteGroup word_action_group(const FiberCoverSpec& spec, std::size_t m,
                              std::size_t domain_cap) {
  if (m == 0) throw OutOfRange("word action needs m >= 1");
  const MoveContext ctx = make_moves(spec);
  const std::size_t letter_choices = (1u << ctx.fiber) - 1;
  std::size_t domain = 1;
  for (std::size_t i = 0; i < m; ++i) {
    domain *= letter_choices;
    if (domain > domain_cap)
      throw LimitExceeded("word action domain exceeds the cap");
  }

  // All length-m words in word order.
  std::vector<State> words;
  State cur;
  std::function<void()> rec = [&]() {
    if (cur.letters.size() == m) {
      words.push_back(cur);
      return;
    }
    for (std::uint16_t mask = 1; mask <= letter_choices; ++mask) {
      cur.letters.push_back(mask);
      rec();
      cur.letters.pop_back();
    }
  };
  rec();
  std::sort(words.begin(), words.end(),
            [](const State& a, const State& b) {
              return to_word(a) < to_word(b);
            });
  std::unordered_map<std::string, std::uint16_t> index;
  for (std::size_t i = 0; i < words.size(); ++i)
    index.emplace(state_key(words[i]), static_cast<std::uint16_t>(i));

  std::vector<Permutation> gens;
  auto add_move = [&](auto&& transform) {
    std::vector<std::uint16_t> images(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
      images[i] = index.at(state_key(transform(words[i])));
    Permutation p{std::move(images)};
    if (!p.is_identity()) gens.push_back(std::move(p));
  };

  for (std::size_t j = 0; j < m; ++j)
    for (const auto& h : ctx.per_letter)
      add_move([&](State s) {
        s.letters[j] = apply_mask(h, s.letters[j]);
        return s;
      });
  for (const auto& l : ctx.global)
    add_move([&](State s) {
      for (auto& mask : s.letters) mask = apply_mask(l, mask);
      return s;
    });
  if (ctx.flip)
    add_move([&](const State& s) {
      State t;
      t.letters.resize(m);
      for (std::size_t j = 0; j < m; ++j)
        t.letters[m - 1 - j] = apply_mask(*ctx.flip, s.letters[j]);
      return t;
    });
  if (ctx.turn)
    add_move([&](const State& s) {
      State t;
      t.letters.resize(m);
      t.letters[0] = apply_mask(*ctx.turn, s.letters[m - 1]);
      for (std::size_t j = 0; j + 1 < m; ++j) t.letters[j + 1] = s.letters[j];
      return t;
    });
  if (ctx.shuffle)
    for (std::size_t i = 0; i + 1 < m; ++i)
      add_move([&](State s) {
        std::swap(s.letters[i], s.letters[i + 1]);
        return s;
      });
  return FiniteGroup::from_generators(std::move(gens), words.size());
}

}  // namespace qgrowth
