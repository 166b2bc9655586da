#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bes/bases.hpp"
#include "bes/caps.hpp"
#include "bes/semantics.hpp"
#include "bes/syntax.hpp"

namespace bes {

enum class SupportStatus { Supported, Refuted, Unknown };
enum class SupportMode { Oracle, LiteralExact, Bounded };

const char* support_status_name(SupportStatus s);
const char* support_mode_name(SupportMode m);

struct SupportQuery {
  Base base;
  std::vector<Formula> context;
  Formula goal = Formula::bot();
};

// Instrumentation hook for the recursion measure: called with the
// (sum-of-weights, is-Inf-judgement) pair of a parent judgement and the child
// it spawned. The child must be lexicographically below the parent.
using MeasureObserver = std::function<void(unsigned, bool, unsigned, bool)>;

struct SupportOptions {
  // Total budget of extension rules added along one recursion path; each
  // universally quantified clause enumerates pool subsets up to this size.
  unsigned pool_depth = 1;
  // Candidate pool truncation (smallest rules first) and per-quantifier
  // subset enumeration cap.
  std::size_t pool_cap = 256;
  std::size_t subset_cap = 4096;
  Caps caps;
  const MeasureObserver* measure_observer = nullptr;
};

struct SupportWitness {
  std::vector<AtomicRule> extension;       // rules added to reach the refuting base
  std::optional<Literal> distinguishing;   // the l of the (or) clause, when relevant
  std::string judgement;                   // the judgement that failed
  std::optional<Valuation> countermodel;   // oracle mode only
};

struct SupportVerdict {
  SupportStatus status = SupportStatus::Unknown;
  SupportMode mode = SupportMode::Bounded;
  std::size_t pool_size = 0;   // bounded mode: candidate rules enumerated
  unsigned pool_depth = 0;
  std::optional<SupportWitness> witness;
};

// Oracle mode requires an empty base (Prop emptybase + soundness/completeness
// license deciding by truth tables). LiteralExact requires literal context
// members and a literal-or-bot goal (Lemma AtComp + atomic cut). Bounded mode
// evaluates the support clauses recursively, quantifying base extensions over
// capped pool subsets; it refutes with a concrete witness or returns Unknown,
// and answers exactly on the sublanguage the metatheory covers.
SupportVerdict support(const SupportQuery& query, SupportMode mode,
                       const SupportOptions& options = {});

struct CrossCheckRecord {
  std::string gamma;
  std::string goal;
  SupportStatus oracle;
  SupportStatus bounded;
  bool hard_failure = false;
};

struct CrossCheckReport {
  std::vector<CrossCheckRecord> records;
  std::size_t total = 0;
  std::size_t hard_failures = 0;
  std::size_t unknown = 0;
  std::size_t agreements = 0;  // both modes reached the same definite verdict
};

// Runs oracle and bounded mode on each empty-base query. A bounded Refuted
// against an oracle Supported (or the reverse) is a hard failure.
CrossCheckReport cross_check(std::span<const SupportQuery> corpus,
                             const SupportOptions& options = {});

// The bounded mode's candidate extension pool, exposed for inspection.
std::vector<AtomicRule> candidate_pool(const SupportQuery& query, const SupportOptions& options);

}  // namespace bes
