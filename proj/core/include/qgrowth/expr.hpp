#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qgrowth/finite_group.hpp"
#include "qgrowth/qatoms.hpp"
#include "qgrowth/series.hpp"

namespace qgrowth {

// The constructive grammar of oligomorphic groups: finite leaves, fiber
// covers of the rational reducts, finite direct products and wreath
// products with the full symmetric group on a countable index set.
enum class ExprKind { Finite, Atom, Prod, WrOmega };

struct GroupExpr {
  ExprKind kind = ExprKind::Finite;
  FiniteGroup finite;               // Finite leaves
  FiberCoverSpec atom;              // Atom leaves
  std::vector<GroupExpr> children;  // Prod (>= 1) / WrOmega (exactly 1)
};

GroupExpr expr_finite(FiniteGroup g);
GroupExpr expr_atom(FiberCoverSpec spec);
GroupExpr expr_prod(std::vector<GroupExpr> children);
GroupExpr expr_wr_omega(GroupExpr child);

// Structural checks: atom specs valid, child counts as above.
// Throws SpecInvalid / ValidationError.
void validate_expr(const GroupExpr& e);

bool expr_equal(const GroupExpr& a, const GroupExpr& b);

// JSON mirror of the AST:
//   {"finite": <group>} | {"atom": <spec>} | {"prod": [...]} |
//   {"wr_omega": <expr>}
std::string expr_to_json(const GroupExpr& e);
GroupExpr expr_from_json(const std::string& text);

// Exact orbit counts on n-subsets for n = 0..N, composed from the
// grammar: finite leaves by direct counting, atoms by the letter-class
// recursion (quotient-averaged when the global group exceeds the letter
// group, multiset form over a pure-equality base, word enumeration for
// the reducts with reversal or rotation moves), products by convolution,
// wreath extensions by the Euler transform.
// bfs_cap bounds the word-enumeration state space on the brute-force
// atom paths (the reducts with reversal or rotation moves).
OrbitSeries profile(const GroupExpr& e, std::size_t N = kDefaultSeriesOrder,
                    std::size_t bfs_cap = 10'000'000);

// Ground truth by independent means: atom terms from word-model
// enumeration; atom-free expressions realized finitely and counted.
// Agrees termwise with profile wherever it is defined.
OrbitSeries oracle_profile(const GroupExpr& e, std::size_t N,
                           std::size_t bfs_cap = 10'000'000);

struct TruncationResult {
  FiniteGroup group;
  std::size_t t = 0;
  std::size_t faithful_to = 0;  // orbit counts match the profile to here
};

// Finite realization with the countable index set cut to t copies.
// Throws NotTruncatable when an atom occurs (atoms have no faithful
// finite realization).
TruncationResult truncate(const GroupExpr& e, std::size_t t);

struct StructureStats {
  std::size_t max_fiber_d = 0;      // largest fiber among atoms whose
                                    // letter group is highly set-transitive
  bool has_non_hst_atom = false;    // some atom letter group fails that
  bool all_fibers_one = true;
  std::size_t skeleton_rank = 0;    // wr_omega nesting depth
};

StructureStats structure_stats(const GroupExpr& e);

}  // namespace qgrowth
