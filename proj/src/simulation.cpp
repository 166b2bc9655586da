#include "bes/simulation.hpp"

#include <algorithm>
#include <set>

#include "bes/errors.hpp"
#include "bes/rng.hpp"
#include "bes/semantics.hpp"

namespace bes {

namespace {

std::string class_key(const Formula& phi) { return print(dual(phi)); }

}  // namespace

Literal FlattenMap::flat(const Formula& phi) const {
  auto it = assign_.find(class_key(phi));
  if (it == assign_.end())
    throw PreconditionError("formula '" + print(phi) + "' outside the flatten domain");
  return it->second;
}

bool FlattenMap::has(const Formula& phi) const { return assign_.count(class_key(phi)) != 0; }

Formula FlattenMap::sharpen(const Literal& l) const {
  auto it = reverse_.find(l);
  if (it != reverse_.end()) return it->second;
  // original literals are their own preimage
  const bool fresh = std::find(fresh_.begin(), fresh_.end(), l.content) != fresh_.end();
  if (!fresh) return Formula::lit(l);
  throw PreconditionError("literal '" + l.str() + "' not in the flatten range");
}

bool FlattenMap::in_range(const Literal& l) const { return reverse_.count(l) != 0; }

std::vector<FlattenMap::Entry> FlattenMap::entries() const {
  std::vector<Entry> out;
  for (const auto& [key, lit] : assign_) {
    Entry e;
    e.key = key;
    e.literal = lit;
    e.representative = rep_.at(key);
    out.push_back(std::move(e));
  }
  return out;
}

FlattenMap build_flatten(std::span<const Formula> gamma, const Formula& goal) {
  FlattenMap m;
  const std::vector<Formula> xi = subformulae(gamma, goal);
  m.original_contents_ = contents_of(xi);

  // representatives: Xi members claim their classes first, duals fill in
  for (const Formula& f : xi) m.rep_.try_emplace(class_key(f), f);
  m.rep_.try_emplace(class_key(Formula::bot()), Formula::bot());
  m.rep_.try_emplace(class_key(Formula::top()), Formula::top());
  for (const Formula& f : xi) m.rep_.try_emplace(class_key(dual(f)), dual(f));

  auto is_original = [&](const std::string& name) {
    return std::binary_search(m.original_contents_.begin(), m.original_contents_.end(), name);
  };
  unsigned counter = 1;
  auto mint = [&]() {
    for (;; ++counter) {
      std::string name = "s" + std::to_string(counter);
      if (!is_original(name)) {
        ++counter;
        m.fresh_.push_back(name);
        return name;
      }
    }
  };

  auto set_class = [&](const std::string& key, const Literal& lit) {
    auto [it, fresh_entry] = m.assign_.emplace(key, lit);
    if (!fresh_entry && !(it->second == lit))
      throw PreconditionError("flatten construction: coherence conflict at class " + key);
  };

  // the dedicated f content: ⊥ ↦ f+, ⊤ ↦ f- (forced by coherence)
  const std::string f = mint();
  m.bot_lit_ = Literal(f, Polarity::Assert);
  set_class(class_key(Formula::bot()), m.bot_lit_);
  set_class(class_key(Formula::top()), m.bot_lit_.dual());

  // literal classes are the identity, in both polarities
  for (const Formula& x : xi) {
    if (!x.is_literal()) continue;
    set_class(class_key(x), x.literal());
    set_class(class_key(dual(x)), x.literal().dual());
  }

  // remaining classes in canonical order: propagate dual-coherent pairs to a
  // fixpoint before minting anything new, so coherence-forced merges land on
  // the same fresh content
  std::vector<Formula> pending;
  for (const Formula& x : xi)
    if (!x.is_literal() && x.kind() != FormulaKind::Bot && x.kind() != FormulaKind::Top)
      pending.push_back(x);

  while (true) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const Formula& x : pending) {
        const std::string k1 = class_key(x);
        const std::string k2 = class_key(dual(x));
        const bool a1 = m.assign_.count(k1), a2 = m.assign_.count(k2);
        if (a1 && !a2) {
          set_class(k2, m.assign_.at(k1).dual());
          progress = true;
        } else if (!a1 && a2) {
          set_class(k1, m.assign_.at(k2).dual());
          progress = true;
        } else if (a1 && a2) {
          if (!(m.assign_.at(k1) == m.assign_.at(k2).dual()))
            throw PreconditionError("flatten construction: dual-parity conflict at " + k1);
        }
      }
    }
    const Formula* next = nullptr;
    for (const Formula& x : pending)
      if (!m.assign_.count(class_key(x))) {
        next = &x;
        break;
      }
    if (!next) break;
    const std::string c = mint();
    set_class(class_key(*next), Literal(c, Polarity::Assert));
    set_class(class_key(dual(*next)), Literal(c, Polarity::Deny));
  }

  // reverse map: earliest canonical key wins, Xi-member representatives first
  auto fill_reverse = [&](bool xi_pass) {
    std::set<std::string> xi_keys;
    for (const Formula& x : xi) xi_keys.insert(class_key(x));
    for (const auto& [key, lit] : m.assign_) {
      if (xi_pass != (xi_keys.count(key) != 0)) continue;
      m.reverse_.try_emplace(lit, m.rep_.at(key));
    }
  };
  fill_reverse(true);
  fill_reverse(false);
  return m;
}

// ---------------------------------------------------------------------------
// Simulation base (the flattened NK± rules over Xi)
// ---------------------------------------------------------------------------

SimulationBase build_simulation_base(std::span<const Formula> gamma, const Formula& goal) {
  SimulationBase sb;
  sb.gamma.assign(gamma.begin(), gamma.end());
  sb.goal = goal;
  sb.xi = subformulae(gamma, goal);
  sb.map = build_flatten(gamma, goal);
  const FlattenMap& m = sb.map;
  const Literal fbot = m.bot_literal();
  const Literal ftop = fbot.dual();

  std::vector<AtomicRule> rules;
  auto sub = [](std::vector<Literal> hyps, Literal prem) {
    return AtomicSubrule(std::move(hyps), std::move(prem));
  };

  // ♭⊤I
  rules.push_back(AtomicRule::axiom(ftop));

  // elimination conclusions: ♭Xi ∪ {♭⊥}
  std::vector<Literal> elim_concls;
  {
    std::set<Literal> seen;
    for (const Formula& x : sb.xi)
      if (seen.insert(m.flat(x)).second) elim_concls.push_back(m.flat(x));
    if (seen.insert(fbot).second) elim_concls.push_back(fbot);
  }

  for (const Formula& x : sb.xi) {
    const Literal fx = m.flat(x);

    // ♭⊥E: ♭⊥ ⇒ ♭φ for φ ∈ Xi
    if (!(fx == fbot)) rules.push_back(AtomicRule({sub({}, fbot)}, fx));

    // ♭DM: (♭φ ⇒ ♭⊥) ⇒ (♭φ)^⊥ and ♭EXC: ♭φ, ♭(φ^⊥) ⇒ ♭⊥
    rules.push_back(AtomicRule({sub({fx}, fbot)}, fx.dual()));
    rules.push_back(AtomicRule({sub({}, fx), sub({}, fx.dual())}, fbot));

    switch (x.kind()) {
      case FormulaKind::Imp: {
        const Literal fa = m.flat(x.lhs());
        const Literal fb = m.flat(x.rhs());
        rules.push_back(AtomicRule({sub({fa}, fb)}, fx));                 // ♭→I
        rules.push_back(AtomicRule({sub({}, fx), sub({}, fa)}, fb));      // ♭→E
        break;
      }
      case FormulaKind::And: {
        const Literal fa = m.flat(x.lhs());
        const Literal fb = m.flat(x.rhs());
        rules.push_back(AtomicRule({sub({}, fa), sub({}, fb)}, fx));      // ♭∧I
        rules.push_back(AtomicRule({sub({}, fx)}, fa));                   // ♭∧E1
        rules.push_back(AtomicRule({sub({}, fx)}, fb));                   // ♭∧E2
        break;
      }
      case FormulaKind::Or: {
        const Literal fa = m.flat(x.lhs());
        const Literal fb = m.flat(x.rhs());
        rules.push_back(AtomicRule({sub({}, fa)}, fx));                   // ♭∨I1
        rules.push_back(AtomicRule({sub({}, fb)}, fx));                   // ♭∨I2
        for (const Literal& fc : elim_concls)                             // ♭∨E
          rules.push_back(AtomicRule({sub({}, fx), sub({fa}, fc), sub({fb}, fc)}, fc));
        break;
      }
      default:
        break;
    }
  }

  sb.base = Base::of(std::move(rules));
  return sb;
}

// ---------------------------------------------------------------------------
// Pipeline and naturalization
// ---------------------------------------------------------------------------

PipelineRecord pipeline(std::span<const Formula> gamma, const Formula& goal, const Caps& caps) {
  PipelineRecord rec;
  rec.semantic = consequence(gamma, goal, caps).holds;

  const SimulationBase sb = build_simulation_base(gamma, goal);
  std::vector<Literal> flat_gamma;
  for (const Formula& g : gamma) flat_gamma.push_back(sb.map.flat(g));
  const AtomicQuery q = AtomicQuery::literal_goal(std::move(flat_gamma), sb.map.flat(goal));
  const DerivationAnswer ans = derives(sb.base, q, caps);
  rec.simulated = ans.derivable;
  rec.agree = rec.semantic == rec.simulated;
  rec.universe_size = ans.universe.size();
  rec.contexts = ans.contexts_materialized;
  return rec;
}

NaturalizeReport naturalize_check(const SimulationBase& sb, unsigned samples,
                                  std::uint64_t seed, const Caps& caps) {
  NaturalizeReport report;
  // the flatten range, in canonical order
  std::vector<Literal> range;
  for (const auto& e : sb.map.entries()) range.push_back(e.literal);
  std::sort(range.begin(), range.end());
  range.erase(std::unique(range.begin(), range.end()), range.end());
  if (range.empty()) return report;

  DerivesEngine engine(sb.base, range, caps);

  for (unsigned i = 0; i < samples; ++i) {
    Rng rng(Rng::derive_seed(seed, i));
    std::vector<Literal> ctx;
    const unsigned n = static_cast<unsigned>(rng.below(4));
    for (unsigned j = 0; j < n; ++j) ctx.push_back(range[rng.below(range.size())]);
    std::sort(ctx.begin(), ctx.end());
    ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());

    const DerivesEngine::DerivedSet derived = engine.derived_at(ctx);
    if (derived.literals.empty() && !derived.absurdity) continue;

    // pick a derivable judgement at this context
    NaturalizeSample sample;
    sample.context = ctx;
    const std::size_t options = derived.literals.size() + (derived.absurdity ? 1 : 0);
    const std::size_t pick = rng.below(options);
    if (pick < derived.literals.size()) sample.conclusion = derived.literals[pick];

    std::vector<Formula> sharp_ctx;
    for (const Literal& l : ctx) sharp_ctx.push_back(sb.map.sharpen(l));
    const Formula sharp_goal =
        sample.conclusion ? sb.map.sharpen(*sample.conclusion) : Formula::bot();
    sample.holds = consequence(sharp_ctx, sharp_goal, caps).holds;
    if (!sample.holds) report.failures++;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

}  // namespace bes
