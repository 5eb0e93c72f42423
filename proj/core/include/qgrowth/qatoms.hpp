#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgrowth/finite_group.hpp"
#include "qgrowth/permutation.hpp"

namespace qgrowth {

// The five base actions on the rational line: the order itself, its
// betweenness / cyclic-order / separation reducts, and bare equality.
enum class QReduct { Order, Betw, Cyc, Sep, Eq };

std::string_view to_string(QReduct base);
QReduct qreduct_from_string(std::string_view text);  // throws ParseError

// A fiber-cover atom: |F| points glued over every rational, kernel letters
// drawn from H, one global coset out of L shared by all fibers, and the
// decorations that extend the order-preserving part to the larger bases.
// flip (letter tau applied while reversing) is allowed only for Betw/Sep
// and defaults to the identity there; turn (letter sigma applied at the
// wrap position while rotating) is required exactly for Cyc/Sep.
struct FiberCoverSpec {
  std::size_t fiber_size = 1;
  FiniteGroup H;
  FiniteGroup L;
  QReduct base = QReduct::Order;
  std::optional<Permutation> flip;
  std::optional<Permutation> turn;
};

// Structural equality: base, fiber size, sorted generator image lists, and
// the literal decoration permutations (absent normalized to id).
bool operator==(const FiberCoverSpec& a, const FiberCoverSpec& b);

// {"fiber":k,"H":[cycles...],"L":[cycles...],"base":"order|betw|cyc|sep|eq",
//  "flip":cycles?, "turn":cycles?}
std::string spec_to_json(const FiberCoverSpec& spec);
FiberCoverSpec spec_from_json(const std::string& text);

struct SpecViolation {
  std::string condition;  // which well-formedness rule failed
  std::string witness;    // offending element(s) in cycle notation, or empty
};

// Empty list means the spec is well formed.  Checks, in order: positive
// fiber size and matching degrees; H normal in L; flip only on Betw/Sep
// with tau normalizing H and L, tau^2 in L, H normal in tau-extended L;
// turn present exactly on Cyc/Sep with sigma in L and every commutator
// sigma^-1 l^-1 sigma l inside H.
std::vector<SpecViolation> validate_spec(const FiberCoverSpec& spec);
bool is_valid_spec(const FiberCoverSpec& spec);
// Throws SpecInvalid listing every violated condition.
void require_valid(const FiberCoverSpec& spec);

// The same group can be presented by several specs: decorations are only
// determined up to cosets (tau up to tau*L, sigma up to sigma*H), and for
// Sep the flip-turn interplay can force extra kernel letters (products of
// flip and turn moves realize the defect tau^-1*sigma*tau*sigma on single
// letters, so H effectively grows to a normal closure containing it).
// canonical_spec absorbs all of that: H is enlarged to the letter group
// actually realized, decorations become the lexicographically least coset
// representatives (explicit id where a default applies), and generator
// lists are reduced deterministically.  Two specs denote the same group
// iff their canonical forms compare equal.
FiberCoverSpec canonical_spec(const FiberCoverSpec& spec);
bool same_group(const FiberCoverSpec& a, const FiberCoverSpec& b);

// Highly set-transitive groups of degree n: S_n; A_n for n >= 3; AGL(1,5)
// at n = 5; PGL(2,5) at n = 6; PGL(2,8) and PGammaL(2,8) at n = 9.  Stored
// as explicit generator tables (the projective ones on the projective
// lines over GF(5) and GF(8)); orders are cross-checked when the list is
// built.  Exhaustive subgroup enumeration confirms the list is complete
// through degree 6.  Throws OutOfRange unless 1 <= n <= 12.
std::vector<FiniteGroup> hst_catalog(std::size_t n);

struct CatalogEntry {
  FiberCoverSpec spec;
  std::string item;  // which case of the atom list produced it, "(i)".."(v)"
  bool p_oligomorphic_family = false;  // the Eq-base family
};

// The atoms with the given fiber size, one entry per case of the
// classification list: undecorated kernels over each base for every highly
// set-transitive H (case ii) and for the index-2/3 pairs (A_n,S_n),
// (PGL(2,8),PGammaL(2,8)) (case iii); odd-flip atoms over A_n (case iv);
// turn atoms with sigma outside H for the index pairs (case v); and the
// Eq-base family (case i), enumerated over all H normal in L up to
// conjugacy for fiber size <= 4 and over the highly set-transitive L
// beyond that.  Throws OutOfRange unless 1 <= fiber_size <= 9.
std::vector<CatalogEntry> enumerate_S_catalog(std::size_t fiber_size);

struct NormalPairReport {
  bool is_normal = false;
  // Case label when the pair matches the classification list; a pair can
  // be normal without matching any listed case (see note).
  std::optional<std::string> matched_case;
  std::optional<FiniteGroup> quotient_group;       // concrete realization
  std::optional<std::string> quotient_structure;   // order/abelian/exponent
  // One of Z1, Z2, Z3, Z2xZ2, Z6 when the quotient is among them (always
  // the case for non-Eq bases with highly set-transitive data).
  std::optional<std::string> quotient_iso_tag;
  std::optional<std::string> note;
};

// Decides whether the group of specN is normal in the group of specG
// (same fiber points).  Both specs are canonicalized first; the verdict
// compares kernel letter groups, coset groups, bases and decoration cosets
// against the case analysis of which conjugations stay inside N.  When
// normal, the quotient G/N is computed exactly: G maps onto
// (profile coset mod the turn-extended H) x (orientation sign), N maps to
// a subgroup, and the kernel of that map lies in N, so the quotient of the
// images realizes G/N as a concrete finite group.
// Throws SpecInvalid if a spec fails validation, FiberMismatch if the
// fiber sizes differ.
NormalPairReport classify_normal_pair(const FiberCoverSpec& specN,
                                      const FiberCoverSpec& specG);

}  // namespace qgrowth
