#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "qgrowth/errors.hpp"
#include "qgrowth/expr.hpp"
#include "qgrowth/finite_group.hpp"
#include "qgrowth/qatoms.hpp"
#include "qgrowth/series.hpp"

using namespace qgrowth;

namespace {

FiniteGroup sym(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(Permutation::from_cycles("(0 1)", n));
  if (n >= 3) {
    std::string cycle = "(0";
    for (std::size_t i = 1; i < n; ++i) cycle += " " + std::to_string(i);
    cycle += ")";
    gens.push_back(Permutation::from_cycles(cycle, n));
  }
  return FiniteGroup::from_generators(std::move(gens), n);
}

FiniteGroup trivial(std::size_t n) { return FiniteGroup::from_generators({}, n); }

FiberCoverSpec atom_spec(std::size_t fiber, FiniteGroup H, FiniteGroup L, QReduct base) {
  FiberCoverSpec spec;
  spec.fiber_size = fiber;
  spec.H = std::move(H);
  spec.L = std::move(L);
  spec.base = base;
  return spec;
}

GroupExpr fib_atom() { return expr_atom(atom_spec(2, sym(2), sym(2), QReduct::Order)); }

GroupExpr chain_atom() { return expr_atom(atom_spec(1, trivial(1), trivial(1), QReduct::Order)); }

std::vector<std::uint64_t> heads(const OrbitSeries& s, std::size_t n_max) {
  std::vector<std::uint64_t> out;
  for (std::size_t n = 0; n <= n_max; ++n)
    out.push_back(static_cast<std::uint64_t>(s.coefficients[n]));
  return out;
}

}  // namespace

TEST_CASE("expression validation enforces the grammar shape") {
  CHECK_NOTHROW(validate_expr(fib_atom()));
  CHECK_NOTHROW(validate_expr(expr_wr_omega(expr_finite(sym(2)))));
  CHECK_NOTHROW(validate_expr(expr_prod({fib_atom(), chain_atom()})));

  CHECK_THROWS_AS(validate_expr(expr_prod({})), ValidationError);

  GroupExpr broken = expr_wr_omega(expr_finite(sym(2)));
  broken.children.push_back(expr_finite(sym(2)));
  CHECK_THROWS_AS(validate_expr(broken), ValidationError);

  // An invalid atom spec (turn on a linear order) is rejected.
  FiberCoverSpec bad = atom_spec(2, sym(2), sym(2), QReduct::Order);
  bad.turn = Permutation::identity(2);
  GroupExpr bad_atom;
  bad_atom.kind = ExprKind::Atom;
  bad_atom.atom = bad;
  CHECK_THROWS_AS(validate_expr(bad_atom), SpecInvalid);
}

TEST_CASE("profiles of the grammar examples") {
  CHECK(heads(profile(fib_atom(), 6), 6) ==
        std::vector<std::uint64_t>{1, 1, 2, 3, 5, 8, 13});
  CHECK(heads(profile(expr_wr_omega(expr_finite(trivial(1))), 5), 5) ==
        std::vector<std::uint64_t>{1, 1, 1, 1, 1, 1});
  CHECK(heads(profile(expr_prod({chain_atom(), chain_atom()}), 4), 4) ==
        std::vector<std::uint64_t>{1, 2, 3, 4, 5});
}

TEST_CASE("finite leaves count subsets up to their degree and zero beyond") {
  const auto u = heads(profile(expr_finite(sym(3)), 5), 5);
  CHECK(u == std::vector<std::uint64_t>{1, 1, 1, 1, 0, 0});
  const auto v = heads(profile(expr_finite(trivial(2)), 4), 4);
  CHECK(v == std::vector<std::uint64_t>{1, 2, 1, 0, 0});
}

TEST_CASE("the empty-domain leaf is the convolution identity") {
  const GroupExpr delta = expr_finite(trivial(0));
  CHECK(heads(profile(delta, 3), 3) == std::vector<std::uint64_t>{1, 0, 0, 0});
  const GroupExpr e = expr_prod({fib_atom(), delta});
  CHECK(heads(profile(e, 6), 6) == heads(profile(fib_atom(), 6), 6));
}

TEST_CASE("a four-letter cyclic fiber grows faster than the plain recursion bases") {
  // Frozen from the word-model enumeration of the same spec; the letter
  // class counts of Z4 are 1,2,1,1 so the recursion outruns Fibonacci.
  std::vector<Permutation> z4gen = {Permutation::from_cycles("(0 1 2 3)", 4)};
  const FiniteGroup Z4 = FiniteGroup::from_generators(z4gen, 4);
  const GroupExpr e = expr_atom(atom_spec(4, Z4, Z4, QReduct::Order));
  CHECK(heads(profile(e, 6), 6) ==
        std::vector<std::uint64_t>{1, 1, 3, 6, 14, 30, 67});
}

TEST_CASE("quotient-averaged atoms agree with brute enumeration") {
  // H = id, L = S2 over the linear order: the Burnside fast path.
  const GroupExpr e = expr_atom(atom_spec(2, trivial(2), sym(2), QReduct::Order));
  CHECK(heads(profile(e, 6), 6) == heads(oracle_profile(e, 6), 6));
  CHECK(profile(e, 2).coefficients[2] == BigInt(3));
  CHECK(profile(e, 1).coefficients[1] == BigInt(1));
}

TEST_CASE("oracle profiles agree with the compositional fast paths") {
  const GroupExpr wr = expr_wr_omega(expr_finite(sym(2)));
  const auto fast = profile(wr, 4), slow = oracle_profile(wr, 4);
  CHECK(heads(fast, 4) == heads(slow, 4));

  const GroupExpr pr = expr_prod({expr_finite(sym(2)), expr_finite(sym(3))});
  CHECK(heads(profile(pr, 5), 5) == heads(oracle_profile(pr, 5), 5));

  GroupExpr sep = expr_atom([] {
    FiberCoverSpec s;
    s.fiber_size = 1;
    s.H = FiniteGroup::from_generators({}, 1);
    s.L = s.H;
    s.base = QReduct::Sep;
    s.flip = Permutation::identity(1);
    s.turn = Permutation::identity(1);
    return s;
  }());
  CHECK(heads(profile(sep, 6), 6) == std::vector<std::uint64_t>{1, 1, 1, 1, 1, 1, 1});
  CHECK(heads(oracle_profile(sep, 6), 6) == heads(profile(sep, 6), 6));
}

TEST_CASE("profiles are deterministic across repeated evaluation") {
  const GroupExpr e = expr_prod({fib_atom(), expr_wr_omega(expr_finite(sym(2)))});
  const auto first = profile(e, 12);
  for (int round = 0; round < 3; ++round) {
    const auto again = profile(e, 12);
    CHECK(again.coefficients == first.coefficients);
  }
}

TEST_CASE("truncation realizes atom-free expressions finitely") {
  const auto sym3 = truncate(expr_wr_omega(expr_finite(trivial(1))), 3);
  CHECK(sym3.group.order() == 6);
  CHECK(sym3.group.degree() == 3);
  CHECK(sym3.t == 3);
  CHECK(sym3.faithful_to == 3);

  const auto w22 = truncate(expr_wr_omega(expr_finite(sym(2))), 2);
  CHECK(w22.group.order() == 8);
  CHECK(w22.group.degree() == 4);

  const auto mixed = truncate(expr_prod({expr_wr_omega(expr_finite(trivial(1))), expr_finite(sym(2))}), 3);
  CHECK(mixed.group.degree() == 5);
  CHECK(mixed.group.order() == 12);  // Sym(3) x S2

  CHECK_THROWS_AS(truncate(fib_atom(), 3), NotTruncatable);
  CHECK_THROWS_AS(truncate(expr_prod({chain_atom(), expr_finite(sym(2))}), 2), NotTruncatable);
}

TEST_CASE("truncated wreath orders follow |g|^t * t!") {
  for (std::size_t t = 1; t <= 4; ++t) {
    const auto r = truncate(expr_wr_omega(expr_finite(sym(2))), t);
    std::uint64_t expect = 1;
    for (std::size_t i = 0; i < t; ++i) expect *= 2;
    for (std::size_t i = 2; i <= t; ++i) expect *= i;
    CHECK(static_cast<std::uint64_t>(r.group.order()) == expect);
  }
}

TEST_CASE("truncations reproduce the symbolic profile up to t") {
  const GroupExpr e = expr_wr_omega(expr_finite(sym(2)));
  const auto r = truncate(e, 4);
  const auto symbolic = profile(e, 4);
  for (std::size_t n = 0; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(BigInt(orbit_counts(r.group, n).subsets) == symbolic.coefficients[n]);
  }
}

TEST_CASE("structure stats summarize fibers and wreath depth") {
  const auto fib = structure_stats(fib_atom());
  CHECK(fib.max_fiber_d == 2);
  CHECK_FALSE(fib.has_non_hst_atom);
  CHECK_FALSE(fib.all_fibers_one);
  CHECK(fib.skeleton_rank == 0);

  std::vector<Permutation> z4gen = {Permutation::from_cycles("(0 1 2 3)", 4)};
  const FiniteGroup Z4 = FiniteGroup::from_generators(z4gen, 4);
  const auto z4 = structure_stats(expr_atom(atom_spec(4, Z4, Z4, QReduct::Order)));
  CHECK(z4.has_non_hst_atom);  // u_2(Z4) = 2 already breaks set-transitivity
  CHECK(z4.max_fiber_d == 0);

  const auto wr = structure_stats(expr_wr_omega(expr_finite(sym(2))));
  CHECK(wr.max_fiber_d == 0);
  CHECK_FALSE(wr.has_non_hst_atom);
  CHECK(wr.skeleton_rank == 1);

  const auto deep = structure_stats(
      expr_wr_omega(expr_prod({expr_wr_omega(expr_finite(trivial(1))), chain_atom()})));
  CHECK(deep.skeleton_rank == 2);
  CHECK(deep.all_fibers_one);
}

TEST_CASE("every atom term bounds the product profile from below") {
  const GroupExpr e = expr_prod({fib_atom(), chain_atom()});
  const auto whole = profile(e, 8);
  const auto part = profile(fib_atom(), 8);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(whole.coefficients[n] >= part.coefficients[n]);
}

TEST_CASE("expression JSON round trips") {
  const GroupExpr e = expr_prod(
      {fib_atom(), expr_wr_omega(expr_finite(sym(3))), chain_atom()});
  const std::string text = expr_to_json(e);
  const GroupExpr back = expr_from_json(text);
  CHECK(expr_equal(back, e));
  CHECK(expr_to_json(back) == text);
  CHECK(heads(profile(back, 6), 6) == heads(profile(e, 6), 6));
  CHECK_FALSE(expr_equal(back, fib_atom()));
  CHECK_THROWS_AS(expr_from_json("{\"prod\":3}"), ParseError);
}
