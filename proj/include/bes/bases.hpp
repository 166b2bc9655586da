#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bes/caps.hpp"
#include "bes/syntax.hpp"

namespace bes {

// One hypothetical subrule (L_i => l_i). A plain premise is a subrule with
// no hypotheses. hyps is kept sorted and deduplicated.
struct AtomicSubrule {
  std::vector<Literal> hyps;
  Literal premise;

  AtomicSubrule() = default;
  AtomicSubrule(std::vector<Literal> hyps, Literal premise);
  friend bool operator==(const AtomicSubrule& a, const AtomicSubrule& b) {
    return a.premise == b.premise && a.hyps == b.hyps;
  }
  friend bool operator<(const AtomicSubrule& a, const AtomicSubrule& b);
};

// An atomic rule: axiom (no subrules), first-level (all subrules
// hypothesis-free) or second-level. Never mentions the absurdity sign.
struct AtomicRule {
  std::vector<AtomicSubrule> subrules;
  Literal head;

  AtomicRule() = default;
  AtomicRule(std::vector<AtomicSubrule> subrules, Literal head);
  static AtomicRule axiom(Literal head) { return AtomicRule({}, std::move(head)); }
  static AtomicRule first_level(std::vector<Literal> premises, Literal head);

  bool is_axiom() const { return subrules.empty(); }
  bool is_first_level() const;

  friend bool operator==(const AtomicRule& a, const AtomicRule& b) {
    return a.head == b.head && a.subrules == b.subrules;
  }
  friend bool operator<(const AtomicRule& a, const AtomicRule& b);
};

std::string print_rule(const AtomicRule& rule);

// A finite set of atomic rules, kept in canonical order without duplicates.
struct Base {
  std::vector<AtomicRule> rules;

  static Base of(std::vector<AtomicRule> rules);
  void add(AtomicRule rule);
  bool contains(const AtomicRule& rule) const;
  // Set union, for base extensions.
  Base with(const Base& extra) const;
};

// One rule per line: `=> l` | `l1, l2 => l` | `(h => p), (=> q) => l`,
// '#' starts a comment. bot/top are rejected inside rules.
Base parse_base(std::string_view text);
std::string print_base(const Base& base);

// L |-_B goal with goal either a literal or the absurdity marker (nullopt).
struct AtomicQuery {
  std::vector<Literal> context;       // deduplicated
  std::optional<Literal> goal;        // nullopt = absurdity
  static AtomicQuery literal_goal(std::vector<Literal> context, Literal goal);
  static AtomicQuery absurdity(std::vector<Literal> context);
};

// All literals occurring in the base's rules, the context and the goal,
// closed under duals, in sorted order.
std::vector<Literal> relevant_universe(const Base& base, const AtomicQuery& query);

struct DerivationStep {
  enum class Kind { App, Abs, Dm, Explode };
  Kind kind;
  std::vector<Literal> context;
  std::optional<Literal> fact;  // nullopt = absurdity reached
  std::size_t rule_index = 0;   // for App: index into the base's rule vector
};

struct DerivationAnswer {
  bool derivable = false;
  std::vector<Literal> universe;
  std::size_t contexts_materialized = 0;
  std::optional<std::vector<DerivationStep>> trace;
};

// Reusable saturation engine over a fixed base and literal universe. The
// table is shared across queries; facts depend only on the base, so later
// queries reuse everything established so far.
class DerivesEngine {
 public:
  // universe must cover every literal in the base; it is closed under duals.
  DerivesEngine(const Base& base, std::vector<Literal> universe, const Caps& caps,
                bool record_trace = false);
  ~DerivesEngine();
  DerivesEngine(DerivesEngine&&) noexcept;
  DerivesEngine& operator=(DerivesEngine&&) noexcept;

  bool query(std::span<const Literal> context, const std::optional<Literal>& goal);

  // Everything derivable at the given context (runs saturation as needed).
  struct DerivedSet {
    std::vector<Literal> literals;
    bool absurdity = false;
  };
  DerivedSet derived_at(std::span<const Literal> context);

  const std::vector<Literal>& universe() const;
  std::size_t contexts_materialized() const;
  std::vector<DerivationStep> take_trace();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot decision of L |-_B goal by demand-driven least-fixpoint
// saturation over the relevant universe.
DerivationAnswer derives(const Base& base, const AtomicQuery& query, const Caps& caps = {},
                         bool record_trace = false);

// Independent oracle: textbook joint fixpoint over every context of the
// universe extended by `extra_fresh_pairs` fresh dual pairs. No worklist, no
// shortcuts. Universe after extension is capped at 12 literals.
DerivationAnswer derives_oracle(const Base& base, const AtomicQuery& query,
                                unsigned extra_fresh_pairs, const Caps& caps = {});

// Replays a recorded trace against the raw closure rules; returns the
// replayed verdict for the original query.
bool replay_trace(const Base& base, const AtomicQuery& query,
                  std::span<const DerivationStep> trace);

}  // namespace bes
