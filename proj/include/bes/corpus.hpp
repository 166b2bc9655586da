#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bes/caps.hpp"
#include "bes/simulation.hpp"
#include "bes/support.hpp"
#include "bes/syntax.hpp"

namespace bes {

struct Sequent {
  std::vector<Formula> gamma;  // size <= 1 in the generated corpora
  Formula goal = Formula::bot();
};

// Every sequent (Gamma, goal) with |Gamma| <= 1 and both formulae drawn from
// the pool of depth <= depth over the first `contents` content names, in
// deterministic order (empty context first, then context members in pool
// order; goals in pool order within each context).
std::vector<Sequent> exhaustive_sequents(unsigned contents, unsigned depth);

// `count` seeded random sequents; item i depends only on (seed, i).
std::vector<Sequent> random_sequents(unsigned contents, unsigned depth, unsigned count,
                                     std::uint64_t seed);

struct CorpusRecord {
  std::string gamma;
  std::string goal;
  PipelineRecord pipeline;
  SupportStatus oracle = SupportStatus::Unknown;
  SupportStatus bounded = SupportStatus::Unknown;
  bool cross_hard_failure = false;
};

struct CorpusReport {
  std::vector<CorpusRecord> records;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t cross_hard_failures = 0;
  std::size_t cross_unknown = 0;
};

// Runs the completeness pipeline on every sequent and, when requested, the
// oracle/bounded support cross-check (empty bases only).
CorpusReport run_corpus(const std::vector<Sequent>& sequents, const Caps& caps,
                        const SupportOptions& support_options, bool with_cross_check);

}  // namespace bes
