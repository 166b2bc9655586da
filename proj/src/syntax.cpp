#include "bes/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_set>

namespace bes {

namespace {

std::size_t combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

const Literal& Formula::literal() const {
  if (kind() != FormulaKind::Lit) throw PreconditionError("literal() on non-literal formula");
  return node_->lit;
}

const Formula& Formula::lhs() const {
  // Formula is standard-layout with node_ as its sole member, so a node's
  // child pointer is pointer-interconvertible with a Formula.
  static_assert(sizeof(Formula) == sizeof(std::shared_ptr<const Node>));
  static_assert(std::is_standard_layout_v<Formula>);
  return reinterpret_cast<const Formula&>(node_->l);
}

const Formula& Formula::rhs() const { return reinterpret_cast<const Formula&>(node_->r); }

Formula Formula::lit(Literal l) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Lit;
  n->lit = std::move(l);
  n->weight = 0;
  n->hash = combine(LiteralHash()(n->lit), 0x11);
  return Formula(std::move(n));
}

Formula Formula::lit(std::string content, Polarity polarity) {
  return lit(Literal(std::move(content), polarity));
}

Formula Formula::bot() {
  static const Formula instance = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Bot;
    n->weight = 1;
    n->hash = 0xb07;
    return Formula(std::move(n));
  }();
  return instance;
}

Formula Formula::top() {
  static const Formula instance = [] {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Top;
    n->weight = 1;
    n->hash = 0x707;
    return Formula(std::move(n));
  }();
  return instance;
}

Formula Formula::binary(FormulaKind kind, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->weight = lhs.weight() + rhs.weight() + 1;
  n->hash = combine(combine(lhs.hash(), rhs.hash()), static_cast<std::size_t>(kind) + 0x20);
  n->l = std::move(lhs.node_);
  n->r = std::move(rhs.node_);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return binary(FormulaKind::And, std::move(lhs), std::move(rhs));
}
Formula Formula::disj(Formula lhs, Formula rhs) {
  return binary(FormulaKind::Or, std::move(lhs), std::move(rhs));
}
Formula Formula::imp(Formula lhs, Formula rhs) {
  return binary(FormulaKind::Imp, std::move(lhs), std::move(rhs));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.weight() != b.weight()) return false;
  switch (a.kind()) {
    case FormulaKind::Lit:
      return a.node_->lit == b.node_->lit;
    case FormulaKind::Bot:
    case FormulaKind::Top:
      return true;
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Formula dual(const Formula& phi) {
  switch (phi.kind()) {
    case FormulaKind::Lit:
      return Formula::lit(phi.literal().dual());
    case FormulaKind::Bot:
      return Formula::top();
    case FormulaKind::Top:
      return Formula::bot();
    case FormulaKind::And:
      return Formula::disj(dual(phi.lhs()), dual(phi.rhs()));
    case FormulaKind::Or:
      return Formula::conj(dual(phi.lhs()), dual(phi.rhs()));
    case FormulaKind::Imp:
      // (phi -> psi)^bot := phi ∧ psi^bot; the antecedent stays as is.
      return Formula::conj(phi.lhs(), dual(phi.rhs()));
  }
  throw PreconditionError("unreachable formula kind");
}

bool cong(const Formula& phi, const Formula& psi) { return dual(phi) == dual(psi); }

Formula negation(const Formula& phi) { return Formula::imp(phi, Formula::bot()); }

namespace {

// precedence: -> lowest, then |, then &; atoms highest
int prec_of(FormulaKind k) {
  switch (k) {
    case FormulaKind::Imp:
      return 1;
    case FormulaKind::Or:
      return 2;
    case FormulaKind::And:
      return 3;
    default:
      return 4;
  }
}

void print_rec(const Formula& f, int min_prec, std::string& out) {
  const int p = prec_of(f.kind());
  switch (f.kind()) {
    case FormulaKind::Lit:
      out += f.literal().str();
      return;
    case FormulaKind::Bot:
      out += "bot";
      return;
    case FormulaKind::Top:
      out += "top";
      return;
    default:
      break;
  }
  const bool parens = p < min_prec;
  if (parens) out += '(';
  if (f.kind() == FormulaKind::Imp) {
    // right-associative
    print_rec(f.lhs(), p + 1, out);
    out += " -> ";
    print_rec(f.rhs(), p, out);
  } else {
    // & and | print/parse left-associatively
    const char* op = f.kind() == FormulaKind::And ? " & " : " | ";
    print_rec(f.lhs(), p, out);
    out += op;
    print_rec(f.rhs(), p + 1, out);
  }
  if (parens) out += ')';
}

}  // namespace

std::string print(const Formula& phi) {
  std::string out;
  print_rec(phi, 0, out);
  return out;
}

bool formula_less(const Formula& a, const Formula& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  if (a == b) return false;
  return print(a) < print(b);
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok : std::uint8_t { LitTok, BotTok, TopTok, Neg, AndOp, OrOp, ImpOp, LParen, RParen, End };

struct Token {
  Tok kind;
  Literal lit;          // for LitTok
  std::size_t offset;   // char offset in input
  std::size_t index;    // token index
  std::string text;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t at, std::string t) {
    out.push_back(Token{k, Literal{}, at, out.size(), std::move(t)});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (c == '(') {
      push(Tok::LParen, at, "(");
      ++i;
    } else if (c == ')') {
      push(Tok::RParen, at, ")");
      ++i;
    } else if (c == '&') {
      push(Tok::AndOp, at, "&");
      ++i;
    } else if (c == '|') {
      push(Tok::OrOp, at, "|");
      ++i;
    } else if (c == '-') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        push(Tok::ImpOp, at, "->");
        i += 2;
      } else {
        throw ParseError("lexical error: stray '-' at offset " + std::to_string(at), at, out.size());
      }
    } else if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string name(text.substr(i, j - i));
      i = j;
      if (name == "bot") {
        push(Tok::BotTok, at, name);
      } else if (name == "top") {
        push(Tok::TopTok, at, name);
      } else if (name == "neg") {
        push(Tok::Neg, at, name);
      } else {
        Polarity pol = Polarity::Assert;
        std::string txt = name;
        if (i < text.size() && text[i] == '+') {
          ++i;
          txt += '+';
        } else if (i < text.size() && text[i] == '-' &&
                   !(i + 1 < text.size() && text[i + 1] == '>')) {
          pol = Polarity::Deny;
          ++i;
          txt += '-';
        }
        Token t{Tok::LitTok, Literal(std::move(name), pol), at, out.size(), std::move(txt)};
        out.push_back(std::move(t));
      }
    } else {
      throw ParseError(std::string("lexical error: unexpected character '") + c + "' at offset " +
                           std::to_string(at),
                       at, out.size());
    }
  }
  push(Tok::End, text.size(), "<end>");
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = parse_imp();
    if (cur().kind != Tok::End) fail("unexpected trailing input");
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = cur();
    throw ParseError(what + " at token " + std::to_string(t.index) + " ('" + t.text +
                         "', offset " + std::to_string(t.offset) + ")",
                     t.offset, t.index);
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (cur().kind == Tok::ImpOp) {
      advance();
      return Formula::imp(std::move(l), parse_imp());
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (cur().kind == Tok::OrOp) {
      advance();
      l = Formula::disj(std::move(l), parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (cur().kind == Tok::AndOp) {
      advance();
      l = Formula::conj(std::move(l), parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    if (cur().kind == Tok::Neg) {
      advance();
      return negation(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    switch (cur().kind) {
      case Tok::LitTok: {
        Formula f = Formula::lit(cur().lit);
        advance();
        return f;
      }
      case Tok::BotTok:
        advance();
        return Formula::bot();
      case Tok::TopTok:
        advance();
        return Formula::top();
      case Tok::LParen: {
        advance();
        Formula f = parse_imp();
        if (cur().kind != Tok::RParen) fail("unbalanced parenthesis: expected ')'");
        advance();
        return f;
      }
      case Tok::RParen:
        fail("unbalanced parenthesis: unexpected ')'");
      default:
        fail("dangling connective: expected a formula");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text)).run(); }

std::vector<Formula> parse_formula_list(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
  std::vector<Formula> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      std::string_view piece = text.substr(start, i - start);
      if (piece.find_first_not_of(" \t\r\n") == std::string_view::npos)
        throw ParseError("empty formula in comma-separated list", start, 0);
      out.push_back(parse_formula(piece));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Formula> subformulae(std::span<const Formula> gamma, const Formula& goal) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  auto visit = [&](auto&& self, const Formula& f) -> void {
    if (!seen.insert(f).second) return;
    out.push_back(f);
    switch (f.kind()) {
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Imp:
        self(self, f.lhs());
        self(self, f.rhs());
        break;
      default:
        break;
    }
  };
  for (const Formula& g : gamma) visit(visit, g);
  visit(visit, goal);
  std::sort(out.begin(), out.end(), formula_less);
  return out;
}

std::vector<std::string> contents_of(std::span<const Formula> formulae) {
  std::set<std::string> names;
  auto visit = [&](auto&& self, const Formula& f) -> void {
    switch (f.kind()) {
      case FormulaKind::Lit:
        names.insert(f.literal().content);
        break;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Imp:
        self(self, f.lhs());
        self(self, f.rhs());
        break;
      default:
        break;
    }
  };
  for (const Formula& f : formulae) visit(visit, f);
  return std::vector<std::string>(names.begin(), names.end());
}

const char* proof_error_kind_name(ProofErrorKind kind) {
  switch (kind) {
    case ProofErrorKind::RuleShape:
      return "rule-shape-mismatch";
    case ProofErrorKind::UnboundHypothesis:
      return "unbound-hypothesis-label";
    case ProofErrorKind::DischargeMismatch:
      return "discharge-formula-mismatch";
    case ProofErrorKind::DualMismatch:
      return "dual-mismatch";
    case ProofErrorKind::DuplicateLabel:
      return "duplicate-discharge-label";
    case ProofErrorKind::Script:
      return "malformed-proof-script";
  }
  return "unknown";
}

}  // namespace bes
