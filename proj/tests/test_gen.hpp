#pragma once

// Shared seeded generators for the property tests.

#include <string>
#include <vector>

#include "bes/bases.hpp"
#include "bes/enumerate.hpp"
#include "bes/rng.hpp"
#include "bes/syntax.hpp"

namespace bes::testgen {

inline Literal random_literal(Rng& rng, std::span<const std::string> contents) {
  return Literal(std::string(contents[rng.below(contents.size())]),
                 rng.chance(1, 2) ? Polarity::Assert : Polarity::Deny);
}

// Random base over the given contents: up to max_rules rules, each an axiom,
// a first-level rule or a second-level rule with small hypothesis sets.
inline Base random_base(Rng& rng, std::span<const std::string> contents, unsigned max_rules) {
  std::vector<AtomicRule> rules;
  const unsigned count = static_cast<unsigned>(rng.below(max_rules + 1));
  for (unsigned i = 0; i < count; ++i) {
    Literal head = random_literal(rng, contents);
    const unsigned n_subs = static_cast<unsigned>(rng.below(3));  // 0..2
    std::vector<AtomicSubrule> subs;
    for (unsigned s = 0; s < n_subs; ++s) {
      std::vector<Literal> hyps;
      const unsigned n_hyps = static_cast<unsigned>(rng.below(3));  // 0..2
      for (unsigned h = 0; h < n_hyps; ++h) hyps.push_back(random_literal(rng, contents));
      subs.emplace_back(std::move(hyps), random_literal(rng, contents));
    }
    rules.emplace_back(std::move(subs), std::move(head));
  }
  return Base::of(std::move(rules));
}

inline std::vector<Literal> random_literal_set(Rng& rng, std::span<const std::string> contents,
                                               unsigned max_size) {
  std::vector<Literal> out;
  const unsigned count = static_cast<unsigned>(rng.below(max_size + 1));
  for (unsigned i = 0; i < count; ++i) out.push_back(random_literal(rng, contents));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace bes::testgen
