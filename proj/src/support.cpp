#include "bes/support.hpp"

#include <algorithm>
#include <map>

#include "bes/errors.hpp"

namespace bes {

const char* support_status_name(SupportStatus s) {
  switch (s) {
    case SupportStatus::Supported: return "supported";
    case SupportStatus::Refuted: return "refuted";
    case SupportStatus::Unknown: return "unknown";
  }
  return "?";
}

const char* support_mode_name(SupportMode m) {
  switch (m) {
    case SupportMode::Oracle: return "oracle";
    case SupportMode::LiteralExact: return "literal-exact";
    case SupportMode::Bounded: return "bounded";
  }
  return "?";
}

namespace {

std::vector<Literal> query_universe(const SupportQuery& q) {
  // literals of the base plus every literal occurring in the query formulae
  std::vector<Formula> all = q.context;
  all.push_back(q.goal);
  std::vector<Literal> lits;
  for (const auto& name : contents_of(all)) {
    lits.emplace_back(name, Polarity::Assert);
    lits.emplace_back(name, Polarity::Deny);
  }
  AtomicQuery dummy = AtomicQuery::absurdity(lits);
  return relevant_universe(q.base, dummy);
}

std::size_t rule_size(const AtomicRule& r) {
  std::size_t s = 0;
  for (const auto& sub : r.subrules) s += 1 + sub.hyps.size();
  return s;
}

std::string judgement_str(std::span<const Formula> gamma, const Formula& goal) {
  std::string s;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (i) s += ", ";
    s += print(gamma[i]);
  }
  if (!gamma.empty()) s += " ";
  s += "|~ " + print(goal);
  return s;
}

enum class Tri { False, True, Unknown };

Literal fresh_literal_pair_base(const std::vector<Literal>& universe) {
  // one fresh content for the (or) clause's literal quantifier
  for (unsigned j = 0;; ++j) {
    const std::string name = j == 0 ? "z" : ("z" + std::to_string(j));
    bool clash = false;
    for (const auto& l : universe)
      if (l.content == name) clash = true;
    if (!clash) return Literal(name, Polarity::Assert);
  }
}

struct Measure {
  unsigned sum;
  bool is_inf;
};

bool lex_below(const Measure& child, const Measure& parent) {
  if (child.sum != parent.sum) return child.sum < parent.sum;
  return !child.is_inf && parent.is_inf;
}

class BoundedEval {
 public:
  BoundedEval(const SupportQuery& q, const SupportOptions& opt)
      : query_(q), opt_(opt), universe_(query_universe(q)) {
    pool_ = candidate_pool(q, opt);
    // quantifier literals: the universe plus one fresh dual pair
    quant_lits_ = universe_;
    const Literal fresh = fresh_literal_pair_base(universe_);
    quant_lits_.push_back(fresh);
    quant_lits_.push_back(fresh.dual());
    engine_universe_ = quant_lits_;
    std::sort(engine_universe_.begin(), engine_universe_.end());
  }

  Tri run(std::optional<SupportWitness>& witness) {
    const Measure root{~0u, true};
    Tri t;
    if (query_.context.empty())
      t = categorical({}, query_.goal, opt_.pool_depth, root, /*recording=*/true);
    else
      t = inf({}, query_.context, query_.goal, opt_.pool_depth, root, /*recording=*/true);
    witness = std::move(witness_);
    return t;
  }

  std::size_t pool_size() const { return pool_.size(); }

 private:
  using ExtKey = std::vector<unsigned>;

  const Base& base_for(const ExtKey& key) {
    auto it = bases_.find(key);
    if (it != bases_.end()) return it->second;
    Base b = query_.base;
    for (unsigned i : key) b.add(pool_[i]);
    return bases_.emplace(key, std::move(b)).first->second;
  }

  DerivesEngine& engine_for(const ExtKey& key) {
    auto it = engines_.find(key);
    if (it != engines_.end()) return *it->second;
    auto eng = std::make_unique<DerivesEngine>(base_for(key), engine_universe_, opt_.caps);
    return *engines_.emplace(key, std::move(eng)).first->second;
  }

  bool derives_at(const ExtKey& key, std::span<const Literal> ctx,
                  const std::optional<Literal>& goal) {
    return engine_for(key).query(ctx, goal);
  }

  void note_measure(const Measure& parent, const Measure& child) {
    if (opt_.measure_observer && *opt_.measure_observer)
      (*opt_.measure_observer)(parent.sum, parent.is_inf, child.sum, child.is_inf);
    if (!lex_below(child, parent))
      throw PreconditionError("support recursion measure failed to decrease");
  }

  // subsets of the pool with size <= budget, smallest first, capped
  const std::vector<ExtKey>& subsets(unsigned budget) {
    auto hit = subsets_cache_.find(budget);
    if (hit != subsets_cache_.end()) return hit->second;
    std::vector<ExtKey> out;
    out.push_back({});
    if (budget >= 1) {
      for (unsigned i = 0; i < pool_.size() && out.size() < opt_.subset_cap; ++i)
        out.push_back({i});
    }
    if (budget >= 2) {
      std::vector<ExtKey> prev_layer;
      for (unsigned i = 0; i < pool_.size(); ++i) prev_layer.push_back({i});
      for (unsigned size = 2; size <= budget; ++size) {
        std::vector<ExtKey> layer;
        for (const auto& k : prev_layer) {
          for (unsigned j = k.back() + 1; j < pool_.size(); ++j) {
            if (out.size() + layer.size() >= opt_.subset_cap) break;
            ExtKey k2 = k;
            k2.push_back(j);
            layer.push_back(std::move(k2));
          }
        }
        out.insert(out.end(), layer.begin(), layer.end());
        prev_layer = std::move(layer);
        if (out.size() >= opt_.subset_cap) break;
      }
    }
    return subsets_cache_.emplace(budget, std::move(out)).first->second;
  }

  static ExtKey merge_key(const ExtKey& a, const ExtKey& b) {
    ExtKey out;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void set_witness(const ExtKey& key, std::optional<Literal> distinguishing,
                   std::string judgement) {
    if (witness_) return;  // first (smallest) witness wins
    SupportWitness w;
    for (unsigned i : key) w.extension.push_back(pool_[i]);
    w.distinguishing = std::move(distinguishing);
    w.judgement = std::move(judgement);
    witness_ = std::move(w);
  }

  // `recording` marks the conclusion spine: witnesses are recorded only for
  // judgements whose failure refutes the query, never for the exploratory
  // premise evaluations inside a quantifier.
  Tri categorical(const ExtKey& key, const Formula& phi, unsigned budget,
                  const Measure& parent, bool recording) {
    const Measure my{phi.weight(), false};
    note_measure(parent, my);
    switch (phi.kind()) {
      case FormulaKind::Lit: {
        const bool ok = derives_at(key, {}, phi.literal());
        if (!ok && recording)
          set_witness(key, std::nullopt, judgement_str({}, phi) + " fails at (At)");
        return ok ? Tri::True : Tri::False;
      }
      case FormulaKind::Bot: {
        const bool ok = derives_at(key, {}, std::nullopt);
        if (!ok && recording)
          set_witness(key, std::nullopt, judgement_str({}, phi) + " fails at (bot)");
        return ok ? Tri::True : Tri::False;
      }
      case FormulaKind::Top:
        return Tri::True;
      case FormulaKind::And: {
        const Tri l = categorical(key, phi.lhs(), budget, my, recording);
        if (l == Tri::False) return Tri::False;
        const Tri r = categorical(key, phi.rhs(), budget, my, recording);
        if (r == Tri::False) return Tri::False;
        return (l == Tri::True && r == Tri::True) ? Tri::True : Tri::Unknown;
      }
      case FormulaKind::Imp: {
        const Formula gamma[] = {phi.lhs()};
        return inf(key, gamma, phi.rhs(), budget, my, recording);
      }
      case FormulaKind::Or:
        return or_clause(key, phi.lhs(), phi.rhs(), budget, my, recording);
    }
    return Tri::Unknown;
  }

  Tri inf(const ExtKey& key, std::span<const Formula> gamma_in, const Formula& goal,
          unsigned budget, const Measure& parent, bool recording) {
    // (Top) members never constrain; a (bot) member supports anything
    std::vector<Formula> gamma;
    for (const Formula& g : gamma_in) {
      if (g.kind() == FormulaKind::Top) continue;
      if (g.kind() == FormulaKind::Bot) return Tri::True;
      gamma.push_back(g);
    }
    if (gamma.empty()) return categorical(key, goal, budget, parent, recording);

    unsigned sum = goal.weight();
    for (const Formula& g : gamma) sum += g.weight();
    const Measure my{sum, true};
    note_measure(parent, my);

    // literal fragment: AtComp + atomic cut make derivability exact
    bool all_literal = goal.kind() == FormulaKind::Bot;
    if (goal.is_literal()) all_literal = true;
    for (const Formula& g : gamma)
      if (!g.is_literal()) all_literal = false;
    if (all_literal) {
      std::vector<Literal> ctx;
      for (const Formula& g : gamma) ctx.push_back(g.literal());
      std::optional<Literal> goal_lit;
      if (goal.is_literal()) goal_lit = goal.literal();
      const bool ok = derives_at(key, ctx, goal_lit);
      if (!ok && recording)
        set_witness(key, std::nullopt, judgement_str(gamma, goal) + " fails at (At)");
      return ok ? Tri::True : Tri::False;
    }

    // hunt for a refuting extension
    for (const ExtKey& x : subsets(budget)) {
      const ExtKey key2 = merge_key(key, x);
      const unsigned rb = budget - static_cast<unsigned>(x.size());
      bool premises_true = true;
      for (const Formula& g : gamma) {
        if (categorical(key2, g, rb, my, /*recording=*/false) != Tri::True) {
          premises_true = false;
          break;
        }
      }
      if (!premises_true) continue;
      if (categorical(key2, goal, rb, my, recording) == Tri::False) {
        if (recording)
          set_witness(key2, std::nullopt, judgement_str(gamma, goal) + " fails at (Inf)");
        return Tri::False;
      }
    }
    return Tri::Unknown;
  }

  Tri or_clause(const ExtKey& key, const Formula& alpha, const Formula& beta, unsigned budget,
                const Measure& my, bool recording) {
    for (const ExtKey& x : subsets(budget)) {
      const ExtKey key2 = merge_key(key, x);
      const unsigned rb = budget - static_cast<unsigned>(x.size());
      for (const Literal& l : quant_lits_) {
        const Formula lit_goal = Formula::lit(l);
        const Formula ga[] = {alpha};
        const Formula gb[] = {beta};
        if (inf(key2, ga, lit_goal, rb, my, /*recording=*/false) != Tri::True) continue;
        if (inf(key2, gb, lit_goal, rb, my, /*recording=*/false) != Tri::True) continue;
        if (!derives_at(key2, {}, l)) {
          if (recording)
            set_witness(key2, l,
                        judgement_str({}, Formula::disj(alpha, beta)) + " fails at (or) on " +
                            l.str());
          return Tri::False;
        }
      }
    }
    return Tri::Unknown;
  }

  const SupportQuery& query_;
  const SupportOptions& opt_;
  std::vector<Literal> universe_;
  std::vector<Literal> quant_lits_;
  std::vector<Literal> engine_universe_;
  std::vector<AtomicRule> pool_;
  std::map<ExtKey, Base> bases_;
  std::map<ExtKey, std::unique_ptr<DerivesEngine>> engines_;
  std::map<unsigned, std::vector<ExtKey>> subsets_cache_;
  std::optional<SupportWitness> witness_;
};

}  // namespace

std::vector<AtomicRule> candidate_pool(const SupportQuery& query, const SupportOptions& options) {
  const std::vector<Literal> u = query_universe(query);
  std::vector<AtomicSubrule> subrules;
  // hypothesis sets of size <= 2 over the universe
  std::vector<std::vector<Literal>> hypsets;
  hypsets.push_back({});
  for (std::size_t i = 0; i < u.size(); ++i) {
    hypsets.push_back({u[i]});
    for (std::size_t j = i + 1; j < u.size(); ++j) hypsets.push_back({u[i], u[j]});
  }
  for (const auto& hs : hypsets)
    for (const auto& p : u) subrules.emplace_back(hs, p);

  std::vector<AtomicRule> pool;
  for (const auto& h : u) {
    pool.push_back(AtomicRule::axiom(h));
    for (std::size_t i = 0; i < subrules.size(); ++i) {
      pool.push_back(AtomicRule({subrules[i]}, h));
      for (std::size_t j = i + 1; j < subrules.size(); ++j)
        pool.push_back(AtomicRule({subrules[i], subrules[j]}, h));
    }
  }
  // drop rules already present, dedupe, order smallest-first
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::erase_if(pool, [&](const AtomicRule& r) { return query.base.contains(r); });
  std::vector<std::pair<std::pair<std::size_t, std::string>, std::size_t>> keyed;
  keyed.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i)
    keyed.emplace_back(std::make_pair(rule_size(pool[i]), print_rule(pool[i])), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<AtomicRule> ordered;
  ordered.reserve(std::min(pool.size(), options.pool_cap));
  for (const auto& [key, idx] : keyed) {
    if (ordered.size() >= options.pool_cap) break;
    ordered.push_back(std::move(pool[idx]));
  }
  return ordered;
}

SupportVerdict support(const SupportQuery& query, SupportMode mode,
                       const SupportOptions& options) {
  SupportVerdict verdict;
  verdict.mode = mode;
  switch (mode) {
    case SupportMode::Oracle: {
      if (!query.base.rules.empty())
        throw PreconditionError("oracle mode requires an empty base (Prop emptybase)");
      const Verdict v = consequence(query.context, query.goal, options.caps);
      verdict.status = v.holds ? SupportStatus::Supported : SupportStatus::Refuted;
      if (!v.holds) {
        SupportWitness w;
        w.countermodel = v.witness;
        w.judgement = judgement_str(query.context, query.goal) + " has a countermodel";
        verdict.witness = std::move(w);
      }
      return verdict;
    }
    case SupportMode::LiteralExact: {
      std::vector<Literal> ctx;
      for (const Formula& g : query.context) {
        if (!g.is_literal())
          throw PreconditionError("literal-exact mode requires literal context members");
        ctx.push_back(g.literal());
      }
      std::optional<Literal> goal;
      if (query.goal.is_literal())
        goal = query.goal.literal();
      else if (query.goal.kind() != FormulaKind::Bot)
        throw PreconditionError("literal-exact mode requires a literal or bot goal");
      const AtomicQuery q = goal ? AtomicQuery::literal_goal(ctx, *goal)
                                 : AtomicQuery::absurdity(ctx);
      const DerivationAnswer ans = derives(query.base, q, options.caps);
      verdict.status = ans.derivable ? SupportStatus::Supported : SupportStatus::Refuted;
      if (!ans.derivable) {
        SupportWitness w;
        w.judgement =
            judgement_str(query.context, query.goal) + " underivable (AtComp at the base itself)";
        verdict.witness = std::move(w);
      }
      return verdict;
    }
    case SupportMode::Bounded: {
      BoundedEval eval(query, options);
      std::optional<SupportWitness> witness;
      const Tri t = eval.run(witness);
      verdict.pool_size = eval.pool_size();
      verdict.pool_depth = options.pool_depth;
      switch (t) {
        case Tri::True:
          verdict.status = SupportStatus::Supported;
          break;
        case Tri::False:
          verdict.status = SupportStatus::Refuted;
          verdict.witness = std::move(witness);
          break;
        case Tri::Unknown:
          verdict.status = SupportStatus::Unknown;
          break;
      }
      return verdict;
    }
  }
  throw PreconditionError("unknown support mode");
}

CrossCheckReport cross_check(std::span<const SupportQuery> corpus,
                             const SupportOptions& options) {
  CrossCheckReport report;
  for (const SupportQuery& q : corpus) {
    const SupportVerdict o = support(q, SupportMode::Oracle, options);
    const SupportVerdict b = support(q, SupportMode::Bounded, options);
    CrossCheckRecord rec;
    rec.gamma = "";
    for (std::size_t i = 0; i < q.context.size(); ++i) {
      if (i) rec.gamma += ", ";
      rec.gamma += print(q.context[i]);
    }
    rec.goal = print(q.goal);
    rec.oracle = o.status;
    rec.bounded = b.status;
    rec.hard_failure =
        (b.status == SupportStatus::Refuted && o.status == SupportStatus::Supported) ||
        (b.status == SupportStatus::Supported && o.status == SupportStatus::Refuted);
    report.total++;
    if (rec.hard_failure) report.hard_failures++;
    if (b.status == SupportStatus::Unknown) report.unknown++;
    if (b.status != SupportStatus::Unknown && b.status == o.status) report.agreements++;
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace bes
