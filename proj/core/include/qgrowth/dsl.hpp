#pragma once

#include <string>

#include "qgrowth/expr.hpp"

namespace qgrowth {

// Textual expression grammar (whitespace-insensitive):
//   expr := 'triv' | 'fin' '{' INT ';' perms '}' | 'Q' BASE
//         | 'cover' '{' 'F' '=' INT ';' 'H' '=' perms ';' 'L' '=' perms ';'
//                   'base' '=' BASE (';' 'flip' '=' perm)? (';' 'turn' '=' perm)? '}'
//         | 'prod' '(' expr (',' expr)* ')' | 'wr_omega' '(' expr ')'
//   BASE := '<' | 'betw' | 'cyc' | 'sep' | 'sym'
//   perm := cycle notation such as (0 1)(2 3); perms := perm (',' perm)*
// 'triv' is the one-point identity group; 'Q <' and friends are one-point
// fibers over the named reduct.  Identity generators are dropped, so the
// print/parse round trip is structurally exact.
// Throws ParseError with line/column diagnostics; ValidationError for
// well-formed text describing an invalid spec.
GroupExpr parse_expr(const std::string& text);

std::string print_expr(const GroupExpr& e);

}  // namespace qgrowth
