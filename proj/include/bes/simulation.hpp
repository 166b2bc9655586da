#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bes/bases.hpp"
#include "bes/caps.hpp"
#include "bes/syntax.hpp"

namespace bes {

// The flattening injection: maps ≅-classes of Xi ∪ Xi^⊥ ∪ {⊥,⊤} to literals.
// Identity on literals, coherent with duality ((♭φ)^⊥ = ♭(φ^⊥)); distinct
// classes receive distinct literals except where coherence forces a merge
// (classes whose duals are congruent).
class FlattenMap {
 public:
  // ♭: throws PreconditionError if phi's class is outside the domain.
  Literal flat(const Formula& phi) const;
  bool has(const Formula& phi) const;

  // ♯: canonical class representative; identity on original literals.
  // Throws PreconditionError if l is neither in range nor original.
  Formula sharpen(const Literal& l) const;
  bool in_range(const Literal& l) const;

  const std::vector<std::string>& fresh_contents() const { return fresh_; }
  Literal bot_literal() const { return bot_lit_; }  // ♭⊥; ♭⊤ is its dual

  // (class key, literal, representative) rows in canonical order.
  struct Entry {
    std::string key;
    Literal literal;
    Formula representative = Formula::bot();
  };
  std::vector<Entry> entries() const;

 private:
  friend FlattenMap build_flatten(std::span<const Formula> gamma, const Formula& goal);
  std::map<std::string, Literal> assign_;          // class key -> literal
  std::map<std::string, Formula> rep_;             // class key -> representative
  std::map<Literal, Formula> reverse_;             // literal -> canonical representative
  std::vector<std::string> fresh_;                 // minted contents, f first
  std::vector<std::string> original_contents_;
  Literal bot_lit_;
};

// Builds ♭ for the subformula closure of (gamma, goal): literals map to
// themselves, ⊥ ↦ f+ and ⊤ ↦ f- for a dedicated fresh content f, and each
// remaining class gets a fresh content, minted in canonical order.
FlattenMap build_flatten(std::span<const Formula> gamma, const Formula& goal);

struct SimulationBase {
  Base base;
  FlattenMap map;
  std::vector<Formula> xi;      // subformula closure in canonical order
  std::vector<Formula> gamma;
  Formula goal = Formula::bot();
};

// Instantiates the simulation rules over Xi: flattened intro/elim rules for
// every connective subformula, the ♭⊤ axiom, ♭⊥ explosion into ♭Xi, and the
// ♭DM / ♭EXC duality rules for every class member.
SimulationBase build_simulation_base(std::span<const Formula> gamma, const Formula& goal);

struct PipelineRecord {
  bool semantic = false;
  bool simulated = false;
  bool agree = false;
  std::size_t universe_size = 0;
  std::size_t contexts = 0;
};

// Runs both sides independently: truth tables for Γ ⊨ γ, saturation over the
// simulation base for ♭Γ ⊢_N ♭γ. Soundness and completeness together say
// agree is always true.
PipelineRecord pipeline(std::span<const Formula> gamma, const Formula& goal,
                        const Caps& caps = {});

struct NaturalizeSample {
  std::vector<Literal> context;
  std::optional<Literal> conclusion;  // nullopt = absurdity
  bool holds = false;
};

struct NaturalizeReport {
  std::vector<NaturalizeSample> samples;
  std::size_t failures = 0;
};

// Samples derivable judgements (L, l) of the simulation base by seeded
// random contexts over the flatten range and checks ♯L ⊨ ♯l (absurdity as
// bot) with the truth-table oracle.
NaturalizeReport naturalize_check(const SimulationBase& sb, unsigned samples,
                                  std::uint64_t seed, const Caps& caps = {});

}  // namespace bes
