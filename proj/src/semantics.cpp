#include "bes/semantics.hpp"

#include <algorithm>

#include "bes/enumerate.hpp"
#include "bes/errors.hpp"

namespace bes {

unsigned Valuation::value(const Literal& l) const {
  auto it = std::lower_bound(contents_.begin(), contents_.end(), l.content);
  if (it == contents_.end() || *it != l.content)
    throw PreconditionError("content '" + l.content + "' outside valuation domain");
  const unsigned asserted = (bits_ >> (it - contents_.begin())) & 1;
  return l.polarity == Polarity::Assert ? asserted : 1 - asserted;
}

std::string Valuation::str() const {
  std::string out;
  for (std::size_t i = 0; i < contents_.size(); ++i) {
    if (i) out += ' ';
    out += contents_[i];
    out += '=';
    out += static_cast<char>('0' + ((bits_ >> i) & 1));
  }
  return out;
}

unsigned eval(const Valuation& v, const Formula& phi) {
  switch (phi.kind()) {
    case FormulaKind::Lit:
      return v.value(phi.literal());
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Top:
      return 1;
    case FormulaKind::And:
      return std::min(eval(v, phi.lhs()), eval(v, phi.rhs()));
    case FormulaKind::Or:
      return std::max(eval(v, phi.lhs()), eval(v, phi.rhs()));
    case FormulaKind::Imp:
      // -x inside max read as the Boolean complement 1-x
      return std::max(1 - eval(v, phi.lhs()), eval(v, phi.rhs()));
  }
  throw PreconditionError("unreachable formula kind");
}

namespace {

std::vector<std::string> query_contents(std::span<const Formula> gamma, const Formula& goal,
                                        const Caps& caps) {
  std::vector<Formula> all(gamma.begin(), gamma.end());
  all.push_back(goal);
  std::vector<std::string> contents = contents_of(all);
  if (contents.size() > caps.max_contents)
    throw ResourceError("query spans " + std::to_string(contents.size()) +
                        " contents, above the cap of " + std::to_string(caps.max_contents));
  return contents;
}

// Valuation with contents[0] as the most significant bit, so that increasing
// `row` walks valuations in lexicographic order.
Valuation row_valuation(const std::vector<std::string>& contents, std::uint64_t row) {
  const std::size_t k = contents.size();
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < k; ++i)
    if ((row >> (k - 1 - i)) & 1) bits |= std::uint64_t{1} << i;
  return Valuation(contents, bits);
}

}  // namespace

Verdict consequence(std::span<const Formula> gamma, const Formula& goal, const Caps& caps) {
  const std::vector<std::string> contents = query_contents(gamma, goal, caps);
  const std::uint64_t rows = std::uint64_t{1} << contents.size();
  for (std::uint64_t row = 0; row < rows; ++row) {
    Valuation v = row_valuation(contents, row);
    bool premises_hold = true;
    for (const Formula& g : gamma)
      if (eval(v, g) == 0) {
        premises_hold = false;
        break;
      }
    if (premises_hold && eval(v, goal) == 0) return Verdict{false, std::move(v)};
  }
  return Verdict{true, std::nullopt};
}

bool tautology(const Formula& phi, const Caps& caps) {
  return consequence({}, phi, caps).holds;
}

bool equivalent(const Formula& phi, const Formula& psi, const Caps& caps) {
  const Formula fs[] = {phi};
  const Formula gs[] = {psi};
  return consequence(fs, psi, caps).holds && consequence(gs, phi, caps).holds;
}

namespace {

bool satisfiable(const std::vector<Formula>& delta, const std::vector<std::string>& contents) {
  const std::uint64_t rows = std::uint64_t{1} << contents.size();
  for (std::uint64_t row = 0; row < rows; ++row) {
    Valuation v = row_valuation(contents, row);
    bool all = true;
    for (const Formula& d : delta)
      if (eval(v, d) == 0) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

bool entails(const std::vector<Formula>& delta, const Formula& psi,
             const std::vector<std::string>& contents) {
  const std::uint64_t rows = std::uint64_t{1} << contents.size();
  for (std::uint64_t row = 0; row < rows; ++row) {
    Valuation v = row_valuation(contents, row);
    bool all = true;
    for (const Formula& d : delta)
      if (eval(v, d) == 0) {
        all = false;
        break;
      }
    if (all && eval(v, psi) == 0) return false;
  }
  return true;
}

}  // namespace

LindenbaumResult lindenbaum(const Formula& phi, unsigned depth, const Caps& caps) {
  if (tautology(phi, caps))
    throw PreconditionError("lindenbaum: input is a tautology, dual seed would be inconsistent");

  const Formula phis[] = {phi};
  const std::vector<std::string> contents = contents_of(phis);
  if (contents.size() > caps.max_contents)
    throw ResourceError("lindenbaum: too many contents");

  LindenbaumResult result;
  result.delta.push_back(dual(phi));

  const std::vector<Formula> enumeration = formulae_by_weight(contents, depth);
  for (const Formula& psi : enumeration) {
    std::vector<Formula> candidate = result.delta;
    candidate.push_back(psi);
    if (satisfiable(candidate, contents)) result.delta = std::move(candidate);
  }

  for (const Formula& psi : enumeration) {
    const bool pos = entails(result.delta, psi, contents);
    const bool neg = entails(result.delta, dual(psi), contents);
    if (pos == neg)
      throw PreconditionError("lindenbaum: closure failed to decide '" + print(psi) +
                              "' exactly one way");
    result.decided.push_back(LindenbaumEntry{psi, pos});
  }

  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < contents.size(); ++i) {
    if (entails(result.delta, Formula::lit(contents[i], Polarity::Assert), contents))
      bits |= std::uint64_t{1} << i;
  }
  result.valuation = Valuation(contents, bits);
  return result;
}

}  // namespace bes
