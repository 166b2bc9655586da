#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bes/caps.hpp"
#include "bes/syntax.hpp"

namespace bes {

// Total assignment over a finite content set. Bit i holds the value of the
// asserted literal of contents()[i]; denials evaluate to the complement, so
// v(c-) = 1 - v(c+) holds by construction.
class Valuation {
 public:
  Valuation() = default;
  Valuation(std::vector<std::string> contents, std::uint64_t bits)
      : contents_(std::move(contents)), bits_(bits) {}

  unsigned value(const Literal& l) const;
  const std::vector<std::string>& contents() const { return contents_; }
  std::uint64_t bits() const { return bits_; }

  // "a=0 b=1" with contents in sorted order.
  std::string str() const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.bits_ == b.bits_ && a.contents_ == b.contents_;
  }

 private:
  std::vector<std::string> contents_;  // sorted
  std::uint64_t bits_ = 0;
};

// Truth-table evaluation per the valuation-extension clauses, with the
// arithmetic minus read as Boolean complement.
unsigned eval(const Valuation& v, const Formula& phi);

struct Verdict {
  bool holds = false;
  std::optional<Valuation> witness;  // first falsifying valuation when !holds
};

// Exhaustive classical consequence over the contents occurring in the query.
// Valuations are enumerated lexicographically (sorted content names,
// contents()[0] most significant), and the first falsifier is reported.
Verdict consequence(std::span<const Formula> gamma, const Formula& goal, const Caps& caps = {});

bool tautology(const Formula& phi, const Caps& caps = {});
bool equivalent(const Formula& phi, const Formula& psi, const Caps& caps = {});

struct LindenbaumEntry {
  Formula psi;
  bool positive;  // true: psi is in the deductive closure; false: its dual is
};

struct LindenbaumResult {
  std::vector<LindenbaumEntry> decided;  // one entry per enumerated formula
  std::vector<Formula> delta;            // the consistent set built, dual(phi) first
  Valuation valuation;                   // induced literal valuation
};

// Bounded Lindenbaum construction: seeds Delta with dual(phi), walks all
// formulae over phi's contents of weight <= depth in (weight, print) order,
// keeps each one that preserves consistency, and reads the decided sides and
// the induced valuation off the result. phi must not be a tautology.
LindenbaumResult lindenbaum(const Formula& phi, unsigned depth, const Caps& caps = {});

}  // namespace bes
