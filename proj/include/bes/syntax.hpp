#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bes/errors.hpp"

namespace bes {

enum class Polarity : std::uint8_t { Assert, Deny };

// An atomic proposition: a content together with the speech act performed on
// it. Duals share the content and differ in polarity; no negation involved.
struct Literal {
  std::string content;
  Polarity polarity = Polarity::Assert;

  Literal() = default;
  Literal(std::string content, Polarity polarity)
      : content(std::move(content)), polarity(polarity) {}

  Literal dual() const {
    return Literal(content, polarity == Polarity::Assert ? Polarity::Deny : Polarity::Assert);
  }
  std::string str() const { return content + (polarity == Polarity::Assert ? "+" : "-"); }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.polarity == b.polarity && a.content == b.content;
  }
  friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
  friend bool operator<(const Literal& a, const Literal& b) {
    if (a.content != b.content) return a.content < b.content;
    return a.polarity < b.polarity;
  }
};

struct LiteralHash {
  std::size_t operator()(const Literal& l) const {
    return std::hash<std::string>()(l.content) * 2 + (l.polarity == Polarity::Deny ? 1 : 0);
  }
};

enum class FormulaKind : std::uint8_t { Lit, Bot, Top, And, Or, Imp };

// Immutable formula tree with value semantics. Nodes are shared, never
// mutated; weight and hash are computed once at construction.
class Formula {
 public:
  static Formula lit(Literal l);
  static Formula lit(std::string content, Polarity polarity = Polarity::Assert);
  static Formula bot();
  static Formula top();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula imp(Formula lhs, Formula rhs);

  FormulaKind kind() const { return node_->kind; }
  bool is_literal() const { return kind() == FormulaKind::Lit; }
  const Literal& literal() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  // Logical weight: 0 on literals, 1 on bot/top, sum-plus-one on connectives.
  unsigned weight() const { return node_->weight; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node {
    FormulaKind kind;
    Literal lit;
    std::shared_ptr<const Node> l, r;
    unsigned weight = 0;
    std::size_t hash = 0;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(FormulaKind kind, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
  friend struct FormulaHash;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// The duality transform. Total on formulae, involutive only on literals and
// the constants; dual(dual(phi)) is congruent, not equal, to phi in general.
Formula dual(const Formula& phi);

// phi ≅ psi: equality of duals.
bool cong(const Formula& phi, const Formula& psi);

// ¬phi as the abbreviation phi -> bot. There is no negation node.
Formula negation(const Formula& phi);

// Canonical text form: minimal parentheses, explicit polarity on literals,
// single spaces around binary operators. parse(print(f)) == f.
std::string print(const Formula& phi);

// Canonical total order: (weight, printed form). Used wherever a
// deterministic enumeration or set order is required.
bool formula_less(const Formula& a, const Formula& b);

// Parses the formula grammar: literals `name+`/`name-`/bare `name`,
// constants `bot`/`top`, prefix `neg`, then `&` > `|` > `->` (right-assoc).
Formula parse_formula(std::string_view text);

// Comma-separated formula list; empty/blank input yields the empty list.
std::vector<Formula> parse_formula_list(std::string_view text);

// Subformula closure of gamma and goal (including themselves), deduplicated,
// in canonical order.
std::vector<Formula> subformulae(std::span<const Formula> gamma, const Formula& goal);

// Sorted content names occurring in the given formulae.
std::vector<std::string> contents_of(std::span<const Formula> formulae);

}  // namespace bes
