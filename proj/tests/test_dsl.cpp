#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <string>
#include <vector>

#include "qgrowth/dsl.hpp"
#include "qgrowth/errors.hpp"
#include "qgrowth/expr.hpp"
#include "qgrowth/qatoms.hpp"

using namespace qgrowth;

namespace {

std::vector<std::uint64_t> heads(const GroupExpr& e, std::size_t n_max) {
  const OrbitSeries s = profile(e, n_max);
  std::vector<std::uint64_t> out;
  for (std::size_t n = 0; n <= n_max; ++n)
    out.push_back(static_cast<std::uint64_t>(s.coefficients[n]));
  return out;
}

void check_round_trip(const GroupExpr& e) {
  const std::string text = print_expr(e);
  CAPTURE(text);
  const GroupExpr back = parse_expr(text);
  CHECK(expr_equal(back, e));
  CHECK(print_expr(back) == text);
}

}  // namespace

TEST_CASE("the grammar examples parse to the advertised groups") {
  const GroupExpr fib = parse_expr("cover{F=2; H=(0 1); L=(0 1); base=<}");
  CHECK(fib.kind == ExprKind::Atom);
  CHECK(heads(fib, 6) == std::vector<std::uint64_t>{1, 1, 2, 3, 5, 8, 13});

  const GroupExpr pair = parse_expr("prod(Q <, Q <)");
  CHECK(heads(pair, 4) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});

  const GroupExpr symw = parse_expr("wr_omega(fin{1;()})");
  CHECK(heads(symw, 4) == std::vector<std::uint64_t>{1, 1, 1, 1, 1});
}

TEST_CASE("leaf forms parse to the expected structures") {
  const GroupExpr t = parse_expr("triv");
  CHECK(t.kind == ExprKind::Finite);
  CHECK(t.finite.degree() == 1);
  CHECK(t.finite.order() == 1);

  const GroupExpr s3 = parse_expr("fin{3;(0 1),(0 1 2)}");
  CHECK(s3.kind == ExprKind::Finite);
  CHECK(s3.finite.order() == 6);

  // 'Q' names a one-point fiber over each reduct; 'sym' is pure equality.
  for (const auto& [text, base] :
       std::vector<std::pair<std::string, QReduct>>{{"Q <", QReduct::Order},
                                                    {"Q betw", QReduct::Betw},
                                                    {"Q cyc", QReduct::Cyc},
                                                    {"Q sep", QReduct::Sep},
                                                    {"Q sym", QReduct::Eq}}) {
    CAPTURE(text);
    const GroupExpr q = parse_expr(text);
    CHECK(q.kind == ExprKind::Atom);
    CHECK(q.atom.fiber_size == 1);
    CHECK(q.atom.base == base);
  }
}

TEST_CASE("parsing ignores whitespace and accepts nested forms") {
  const GroupExpr a = parse_expr("prod(cover{F=2;H=(0 1);L=(0 1);base=<},wr_omega(triv))");
  const GroupExpr b = parse_expr(
      "prod(\n  cover{ F = 2 ; H = (0 1) ; L = (0 1) ; base = < },\n  wr_omega( triv )\n)");
  CHECK(expr_equal(a, b));
  CHECK(print_expr(a) == print_expr(b));
}

TEST_CASE("print and parse round trip on the atom catalog and composites") {
  std::vector<GroupExpr> corpus;
  for (std::size_t fiber = 1; fiber <= 3; ++fiber)
    for (const auto& entry : enumerate_S_catalog(fiber)) corpus.push_back(expr_atom(entry.spec));
  REQUIRE(corpus.size() == 36);

  const std::size_t atoms = corpus.size();
  corpus.push_back(parse_expr("triv"));
  corpus.push_back(parse_expr("fin{3;(0 1),(0 1 2)}"));
  corpus.push_back(parse_expr("fin{4;(0 1 2 3)}"));
  for (std::size_t i = 0; i + 7 < atoms; i += 7)
    corpus.push_back(expr_prod({corpus[i], corpus[i + 7]}));
  for (std::size_t i = 3; i < atoms; i += 9) corpus.push_back(expr_wr_omega(corpus[i]));
  corpus.push_back(expr_wr_omega(expr_prod({corpus[0], corpus[atoms], corpus[atoms + 1]})));
  corpus.push_back(expr_prod({expr_wr_omega(corpus[atoms]), corpus[2]}));
  REQUIRE(corpus.size() >= 50);

  for (const GroupExpr& e : corpus) check_round_trip(e);
}

TEST_CASE("the printer canonicalizes the one-point identity to triv") {
  CHECK(print_expr(parse_expr("fin{1;()}")) == "triv");
  CHECK(expr_equal(parse_expr("fin{1;()}"), parse_expr("triv")));
}

TEST_CASE("parse failures carry line and column diagnostics") {
  try {
    parse_expr("prod(Q <,");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 1, column 10") != std::string::npos);
    CHECK(what.find("end of input") != std::string::npos);
  }

  try {
    parse_expr("prod(triv,\n  wr_omega(Q betw),\n  oops)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 3, column 3") != std::string::npos);
    CHECK(what.find("oops") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_expr(""), ParseError);
  CHECK_THROWS_AS(parse_expr("bogus"), ParseError);
  CHECK_THROWS_AS(parse_expr("prod()"), ParseError);
  CHECK_THROWS_AS(parse_expr("cover{F=2;H=(0 1)}"), ParseError);
}

TEST_CASE("well-formed text describing an invalid group is rejected after parsing") {
  // A rotation outside L.
  CHECK_THROWS_AS(parse_expr("cover{F=3;H=(0 1 2);L=(0 1 2);base=cyc;turn=(0 1)}"),
                  SpecInvalid);
  // A reversal decoration over the plain linear order.
  CHECK_THROWS_AS(parse_expr("cover{F=2;H=(0 1);L=(0 1);base=<;flip=()}"), SpecInvalid);
  // A generator moving points beyond the declared degree.
  CHECK_THROWS_AS(parse_expr("fin{2;(0 3)}"), ValidationError);
}
