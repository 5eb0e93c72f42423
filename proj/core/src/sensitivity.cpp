#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "qgrowth/errors.hpp"
#include "qgrowth/finite_group.hpp"

namespace qgrowth {

// Whether projections to m coordinates already separate tuple orbits.
//
// The full quantifier ranges over all pairs of n-tuples in distinct orbits,
// but the search space collapses exactly:
//   * n ≤ m passes automatically: a projection covering every coordinate
//     transports any aligning g back to the full tuples.
//   * Tuples with different coordinate-equality patterns are separated by
//     any projection hitting a pair (i,j) where the patterns differ (m ≥ 2).
//   * Tuples sharing a pattern are orbit-equivalent iff their injective
//     cores are, and a separating projection exists for the pair iff one
//     exists for the cores; so only injective tuples need checking.
//   * Only orbit representatives matter (g·u ∘ p = g·(u∘p) transports
//     separations along orbits), and reordering a projection's coordinates
//     preserves separation, so increasing injective projections suffice.
// Hence: for every k with m < k ≤ min(n_max, degree), label each injective
// k-tuple orbit representative by the canonical forms of all its
// m-coordinate subprojections; two representatives with identical label
// vectors are exactly a failure witness.
SensitivityReport m_sensitivity(const FiniteGroup& G, std::size_t m,
                                std::size_t n_max) {
  if (m < 2) throw OutOfRange("sensitivity requires m >= 2");
  SensitivityReport report;
  report.verified_to = n_max;
  std::size_t k_hi = std::min(n_max, G.degree());
  for (std::size_t k = m + 1; k <= k_hi; ++k) {
    std::vector<std::vector<std::uint16_t>> reps =
        injective_orbit_representatives(G, k);
    if (reps.size() <= 1) continue;
    // all increasing index sets S ⊆ [k], |S| = m
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    while (true) {
      subsets.push_back(idx);
      std::size_t i = m;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (idx[i] + 1 < k - (m - 1 - i)) {
          ++idx[i];
          for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    std::map<std::string, std::size_t> label_to_rep;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      std::string label;
      for (const auto& S : subsets) {
        std::vector<std::uint16_t> proj(m);
        for (std::size_t i = 0; i < m; ++i) proj[i] = reps[r][S[i]];
        std::vector<std::uint16_t> canon = canonical_tuple(G, proj);
        for (std::uint16_t v : canon) {
          label.push_back(static_cast<char>(v & 0xFF));
          label.push_back(static_cast<char>(v >> 8));
        }
        label.push_back('|');
      }
      auto [it, inserted] = label_to_rep.emplace(std::move(label), r);
      if (!inserted) {
        report.is_sensitive = false;
        report.witness = {reps[it->second], reps[r]};
        return report;
      }
    }
  }
  return report;
}

}  // namespace qgrowth
