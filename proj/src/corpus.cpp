#include "bes/corpus.hpp"

#include "bes/enumerate.hpp"
#include "bes/rng.hpp"

namespace bes {

std::vector<Sequent> exhaustive_sequents(unsigned contents, unsigned depth) {
  const auto names = default_contents(contents);
  const std::vector<Formula> pool = formulae_by_depth(names, depth);
  std::vector<Sequent> out;
  out.reserve((pool.size() + 1) * pool.size());
  for (const Formula& goal : pool) out.push_back(Sequent{{}, goal});
  for (const Formula& member : pool)
    for (const Formula& goal : pool) out.push_back(Sequent{{member}, goal});
  return out;
}

std::vector<Sequent> random_sequents(unsigned contents, unsigned depth, unsigned count,
                                     std::uint64_t seed) {
  const auto names = default_contents(contents);
  std::vector<Sequent> out;
  out.reserve(count);
  for (unsigned i = 0; i < count; ++i) {
    Rng rng(Rng::derive_seed(seed, i));
    Sequent s;
    if (rng.chance(1, 2)) s.gamma.push_back(random_formula(rng, names, depth));
    s.goal = random_formula(rng, names, depth);
    out.push_back(std::move(s));
  }
  return out;
}

CorpusReport run_corpus(const std::vector<Sequent>& sequents, const Caps& caps,
                        const SupportOptions& support_options, bool with_cross_check) {
  CorpusReport report;
  report.records.reserve(sequents.size());
  for (const Sequent& s : sequents) {
    CorpusRecord rec;
    for (std::size_t i = 0; i < s.gamma.size(); ++i) {
      if (i) rec.gamma += ", ";
      rec.gamma += print(s.gamma[i]);
    }
    rec.goal = print(s.goal);
    rec.pipeline = pipeline(s.gamma, s.goal, caps);
    rec.pipeline.agree ? ++report.agree : ++report.disagree;

    if (with_cross_check) {
      const SupportQuery q{Base{}, s.gamma, s.goal};
      rec.oracle = support(q, SupportMode::Oracle, support_options).status;
      rec.bounded = support(q, SupportMode::Bounded, support_options).status;
      rec.cross_hard_failure =
          (rec.bounded == SupportStatus::Refuted && rec.oracle == SupportStatus::Supported) ||
          (rec.bounded == SupportStatus::Supported && rec.oracle == SupportStatus::Refuted);
      if (rec.cross_hard_failure) ++report.cross_hard_failures;
      if (rec.bounded == SupportStatus::Unknown) ++report.cross_unknown;
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace bes
