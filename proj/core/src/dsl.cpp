#include "qgrowth/dsl.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "qgrowth/errors.hpp"

namespace qgrowth {

namespace {

enum class Tok { LBrace, RBrace, LParen, RParen, Comma, Semi, Assign, Less, Ident, Int, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::string t) {
    tokens.push_back({kind, std::move(t), line, column});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    switch (c) {
      case '{': push(Tok::LBrace, "{"); ++i; ++column; continue;
      case '}': push(Tok::RBrace, "}"); ++i; ++column; continue;
      case '(': push(Tok::LParen, "("); ++i; ++column; continue;
      case ')': push(Tok::RParen, ")"); ++i; ++column; continue;
      case ',': push(Tok::Comma, ","); ++i; ++column; continue;
      case ';': push(Tok::Semi, ";"); ++i; ++column; continue;
      case '=': push(Tok::Assign, "="); ++i; ++column; continue;
      case '<': push(Tok::Less, "<"); ++i; ++column; continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Int, text.substr(i, j - i));
      column += j - i;
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_')) {
        ++j;
      }
      push(Tok::Ident, text.substr(i, j - i));
      column += j - i;
      i = j;
      continue;
    }
    std::ostringstream out;
    out << "line " << line << ", column " << column << ": unexpected character '"
        << c << "'";
    throw ParseError(out.str());
  }
  tokens.push_back({Tok::End, "", line, column});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  GroupExpr parse() {
    GroupExpr e = expression();
    expect_end();
    return e;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;

  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::ostringstream out;
    out << "line " << t.line << ", column " << t.column << ": expected "
        << expected << ", found "
        << (t.kind == Tok::End ? std::string("end of input")
                               : "'" + t.text + "'");
    throw ParseError(out.str());
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return take();
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("end of input");
  }

  std::size_t integer(const std::string& what) {
    const Token t = expect(Tok::Int, what);
    return static_cast<std::size_t>(std::stoull(t.text));
  }

  std::string keyword() {
    if (peek().kind != Tok::Ident) fail("a keyword");
    return take().text;
  }

  // One permutation in cycle notation: '(' INT* ')' repeated.
  Permutation permutation(std::size_t degree) {
    if (peek().kind != Tok::LParen) fail("a permutation in cycle notation");
    std::string cycles;
    while (peek().kind == Tok::LParen) {
      take();
      cycles += '(';
      bool first = true;
      while (peek().kind == Tok::Int) {
        if (!first) cycles += ' ';
        cycles += take().text;
        first = false;
      }
      expect(Tok::RParen, "')' closing a cycle");
      cycles += ')';
    }
    return Permutation::from_cycles(cycles, degree);
  }

  // perms := perm (',' perm)*; identity entries are dropped.
  std::vector<Permutation> permutations(std::size_t degree) {
    std::vector<Permutation> gens;
    while (true) {
      Permutation p = permutation(degree);
      if (!p.is_identity()) gens.push_back(std::move(p));
      if (peek().kind != Tok::Comma) break;
      take();
    }
    return gens;
  }

  QReduct base_name() {
    if (peek().kind == Tok::Less) {
      take();
      return QReduct::Order;
    }
    if (peek().kind == Tok::Ident) {
      const Token t = take();
      if (t.text == "betw") return QReduct::Betw;
      if (t.text == "cyc") return QReduct::Cyc;
      if (t.text == "sep") return QReduct::Sep;
      if (t.text == "sym") return QReduct::Eq;
      std::ostringstream out;
      out << "line " << t.line << ", column " << t.column
          << ": expected a base name ('<', 'betw', 'cyc', 'sep', 'sym'), found '"
          << t.text << "'";
      throw ParseError(out.str());
    }
    fail("a base name ('<', 'betw', 'cyc', 'sep', 'sym')");
  }

  void field_name(const std::string& name) {
    if (peek().kind != Tok::Ident || peek().text != name) fail("'" + name + "'");
    take();
    expect(Tok::Assign, "'='");
  }

  GroupExpr expression() {
    if (peek().kind != Tok::Ident) fail("an expression");
    const Token head = take();
    if (head.text == "triv") {
      return expr_finite(FiniteGroup::from_generators({}, 1));
    }
    if (head.text == "fin") {
      expect(Tok::LBrace, "'{'");
      const std::size_t degree = integer("the degree");
      expect(Tok::Semi, "';'");
      std::vector<Permutation> gens = permutations(degree);
      expect(Tok::RBrace, "'}'");
      return expr_finite(FiniteGroup::from_generators(std::move(gens), degree));
    }
    if (head.text == "Q") {
      const QReduct base = base_name();
      FiberCoverSpec spec;
      spec.fiber_size = 1;
      spec.H = FiniteGroup::from_generators({}, 1);
      spec.L = FiniteGroup::from_generators({}, 1);
      spec.base = base;
      if (base == QReduct::Cyc || base == QReduct::Sep) {
        spec.turn = Permutation::identity(1);
      }
      require_valid(spec);
      return expr_atom(std::move(spec));
    }
    if (head.text == "cover") {
      expect(Tok::LBrace, "'{'");
      field_name("F");
      FiberCoverSpec spec;
      spec.fiber_size = integer("the fiber size");
      expect(Tok::Semi, "';'");
      field_name("H");
      spec.H = FiniteGroup::from_generators(permutations(spec.fiber_size),
                                            spec.fiber_size);
      expect(Tok::Semi, "';'");
      field_name("L");
      spec.L = FiniteGroup::from_generators(permutations(spec.fiber_size),
                                            spec.fiber_size);
      expect(Tok::Semi, "';'");
      field_name("base");
      spec.base = base_name();
      if (peek().kind == Tok::Semi && tokens_[pos_ + 1].kind == Tok::Ident &&
          tokens_[pos_ + 1].text == "flip") {
        take();
        field_name("flip");
        spec.flip = permutation(spec.fiber_size);
      }
      if (peek().kind == Tok::Semi && tokens_[pos_ + 1].kind == Tok::Ident &&
          tokens_[pos_ + 1].text == "turn") {
        take();
        field_name("turn");
        spec.turn = permutation(spec.fiber_size);
      }
      expect(Tok::RBrace, "'}'");
      require_valid(spec);
      return expr_atom(std::move(spec));
    }
    if (head.text == "prod") {
      expect(Tok::LParen, "'('");
      std::vector<GroupExpr> children;
      children.push_back(expression());
      while (peek().kind == Tok::Comma) {
        take();
        children.push_back(expression());
      }
      expect(Tok::RParen, "')'");
      return expr_prod(std::move(children));
    }
    if (head.text == "wr_omega") {
      expect(Tok::LParen, "'('");
      GroupExpr child = expression();
      expect(Tok::RParen, "')'");
      return expr_wr_omega(std::move(child));
    }
    std::ostringstream out;
    out << "line " << head.line << ", column " << head.column
        << ": unknown expression head '" << head.text << "'";
    throw ParseError(out.str());
  }
};

std::string base_token(QReduct base) {
  switch (base) {
    case QReduct::Order: return "<";
    case QReduct::Betw: return "betw";
    case QReduct::Cyc: return "cyc";
    case QReduct::Sep: return "sep";
    case QReduct::Eq: return "sym";
  }
  return "?";
}

std::string perms_text(const FiniteGroup& g) {
  if (g.generators().empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    if (i) out += ",";
    out += g.generators()[i].to_cycles();
  }
  return out;
}

bool is_q_shorthand(const FiberCoverSpec& spec) {
  if (spec.fiber_size != 1 || !spec.H.generators().empty() ||
      !spec.L.generators().empty() || spec.flip.has_value()) {
    return false;
  }
  const bool needs_turn = spec.base == QReduct::Cyc || spec.base == QReduct::Sep;
  return needs_turn ? (spec.turn.has_value() && spec.turn->is_identity())
                    : !spec.turn.has_value();
}

}  // namespace

GroupExpr parse_expr(const std::string& text) {
  Parser parser(tokenize(text));
  GroupExpr e = parser.parse();
  validate_expr(e);
  return e;
}

std::string print_expr(const GroupExpr& e) {
  switch (e.kind) {
    case ExprKind::Finite: {
      if (e.finite.degree() == 1 && e.finite.generators().empty()) return "triv";
      std::ostringstream out;
      out << "fin{" << e.finite.degree() << "; " << perms_text(e.finite) << "}";
      return out.str();
    }
    case ExprKind::Atom: {
      const FiberCoverSpec& spec = e.atom;
      if (is_q_shorthand(spec)) return "Q " + base_token(spec.base);
      std::ostringstream out;
      out << "cover{F=" << spec.fiber_size << "; H=" << perms_text(spec.H)
          << "; L=" << perms_text(spec.L) << "; base=" << base_token(spec.base);
      if (spec.flip) out << "; flip=" << spec.flip->to_cycles();
      if (spec.turn) out << "; turn=" << spec.turn->to_cycles();
      out << "}";
      return out.str();
    }
    case ExprKind::Prod: {
      std::string out = "prod(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(e.children[i]);
      }
      return out + ")";
    }
    case ExprKind::WrOmega:
      return "wr_omega(" + print_expr(e.children.front()) + ")";
  }
  return "";
}

}  // namespace qgrowth
