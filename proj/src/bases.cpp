#include "bes/bases.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_map>

#include "bes/errors.hpp"

namespace bes {

AtomicSubrule::AtomicSubrule(std::vector<Literal> hyps_in, Literal premise_in)
    : hyps(std::move(hyps_in)), premise(std::move(premise_in)) {
  std::sort(hyps.begin(), hyps.end());
  hyps.erase(std::unique(hyps.begin(), hyps.end()), hyps.end());
}

bool operator<(const AtomicSubrule& a, const AtomicSubrule& b) {
  if (a.hyps != b.hyps) return a.hyps < b.hyps;
  return a.premise < b.premise;
}

AtomicRule::AtomicRule(std::vector<AtomicSubrule> subrules_in, Literal head_in)
    : subrules(std::move(subrules_in)), head(std::move(head_in)) {
  std::sort(subrules.begin(), subrules.end());
  subrules.erase(std::unique(subrules.begin(), subrules.end()), subrules.end());
}

AtomicRule AtomicRule::first_level(std::vector<Literal> premises, Literal head) {
  std::vector<AtomicSubrule> subs;
  subs.reserve(premises.size());
  for (Literal& p : premises) subs.emplace_back(std::vector<Literal>{}, std::move(p));
  return AtomicRule(std::move(subs), std::move(head));
}

bool AtomicRule::is_first_level() const {
  for (const auto& s : subrules)
    if (!s.hyps.empty()) return false;
  return true;
}

bool operator<(const AtomicRule& a, const AtomicRule& b) {
  if (a.head != b.head) return a.head < b.head;
  return a.subrules < b.subrules;
}

std::string print_rule(const AtomicRule& rule) {
  std::string out;
  auto lits = [](const std::vector<Literal>& ls) {
    std::string s;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (i) s += ", ";
      s += ls[i].str();
    }
    return s;
  };
  if (rule.is_axiom()) {
    out = "=> " + rule.head.str();
  } else if (rule.is_first_level()) {
    std::vector<Literal> prems;
    for (const auto& s : rule.subrules) prems.push_back(s.premise);
    out = lits(prems) + " => " + rule.head.str();
  } else {
    for (std::size_t i = 0; i < rule.subrules.size(); ++i) {
      if (i) out += ", ";
      const auto& s = rule.subrules[i];
      out += "(" + lits(s.hyps) + (s.hyps.empty() ? "=> " : " => ") + s.premise.str() + ")";
    }
    out += " => " + rule.head.str();
  }
  return out;
}

Base Base::of(std::vector<AtomicRule> rules_in) {
  Base b;
  b.rules = std::move(rules_in);
  std::sort(b.rules.begin(), b.rules.end());
  b.rules.erase(std::unique(b.rules.begin(), b.rules.end()), b.rules.end());
  return b;
}

void Base::add(AtomicRule rule) {
  auto it = std::lower_bound(rules.begin(), rules.end(), rule);
  if (it == rules.end() || !(*it == rule)) rules.insert(it, std::move(rule));
}

bool Base::contains(const AtomicRule& rule) const {
  return std::binary_search(rules.begin(), rules.end(), rule);
}

Base Base::with(const Base& extra) const {
  Base out = *this;
  for (const auto& r : extra.rules) out.add(r);
  return out;
}

std::string print_base(const Base& base) {
  std::string out;
  for (const auto& r : base.rules) {
    out += print_rule(r);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Base file parsing
// ---------------------------------------------------------------------------

namespace {

struct BaseTok {
  enum Kind { Lit, Arrow, Comma, LParen, RParen, End } kind;
  Literal lit;
  std::size_t col;
};

std::vector<BaseTok> lex_base_line(std::string_view line, std::size_t line_no) {
  std::vector<BaseTok> out;
  std::size_t i = 0;
  auto err = [&](const std::string& msg, std::size_t col) -> void {
    throw ParseError("base line " + std::to_string(line_no) + ": " + msg, col, out.size());
  };
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (c == '#') break;
    if (c == '(') {
      out.push_back({BaseTok::LParen, {}, at});
      ++i;
    } else if (c == ')') {
      out.push_back({BaseTok::RParen, {}, at});
      ++i;
    } else if (c == ',') {
      out.push_back({BaseTok::Comma, {}, at});
      ++i;
    } else if (c == '=') {
      if (i + 1 < line.size() && line[i + 1] == '>') {
        out.push_back({BaseTok::Arrow, {}, at});
        i += 2;
      } else {
        err("expected '=>'", at);
      }
    } else if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
        ++j;
      std::string name(line.substr(i, j - i));
      i = j;
      if (name == "bot" || name == "top")
        err("'" + name + "' is a logical sign, not admissible in atomic rules", at);
      Polarity pol = Polarity::Assert;
      if (i < line.size() && line[i] == '+') {
        ++i;
      } else if (i < line.size() && line[i] == '-') {
        pol = Polarity::Deny;
        ++i;
      }
      out.push_back({BaseTok::Lit, Literal(std::move(name), pol), at});
    } else {
      err(std::string("unexpected character '") + c + "'", at);
    }
  }
  out.push_back({BaseTok::End, {}, line.size()});
  return out;
}

class BaseLineParser {
 public:
  BaseLineParser(std::vector<BaseTok> toks, std::size_t line_no)
      : toks_(std::move(toks)), line_(line_no) {}

  AtomicRule run() {
    std::vector<AtomicSubrule> subs;
    if (cur().kind != BaseTok::Arrow) {
      for (;;) {
        subs.push_back(parse_element());
        if (cur().kind == BaseTok::Comma) {
          advance();
          continue;
        }
        break;
      }
    }
    expect(BaseTok::Arrow, "'=>'");
    Literal head = expect_literal();
    if (cur().kind != BaseTok::End) fail("trailing input after rule head");
    return AtomicRule(std::move(subs), std::move(head));
  }

 private:
  const BaseTok& cur() const { return toks_[pos_]; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("base line " + std::to_string(line_) + ": " + what, cur().col, pos_);
  }

  void expect(BaseTok::Kind k, const std::string& what) {
    if (cur().kind != k) fail("expected " + what);
    advance();
  }

  Literal expect_literal() {
    if (cur().kind != BaseTok::Lit) fail("expected a literal");
    Literal l = cur().lit;
    advance();
    return l;
  }

  AtomicSubrule parse_element() {
    if (cur().kind == BaseTok::Lit) {
      return AtomicSubrule({}, expect_literal());
    }
    if (cur().kind == BaseTok::LParen) {
      advance();
      std::vector<Literal> hyps;
      if (cur().kind == BaseTok::Lit) {
        hyps.push_back(expect_literal());
        while (cur().kind == BaseTok::Comma) {
          advance();
          hyps.push_back(expect_literal());
        }
      }
      expect(BaseTok::Arrow, "'=>' inside subrule");
      Literal prem = expect_literal();
      expect(BaseTok::RParen, "')'");
      return AtomicSubrule(std::move(hyps), std::move(prem));
    }
    fail("expected a literal or '(' subrule");
  }

  std::vector<BaseTok> toks_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Base parse_base(std::string_view text) {
  std::vector<AtomicRule> rules;
  std::size_t line_no = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      ++line_no;
      std::string_view line = text.substr(start, i - start);
      start = i + 1;
      auto toks = lex_base_line(line, line_no);
      if (toks.size() == 1) continue;  // blank or comment-only
      rules.push_back(BaseLineParser(std::move(toks), line_no).run());
    }
  }
  return Base::of(std::move(rules));
}

// ---------------------------------------------------------------------------
// Queries and universes
// ---------------------------------------------------------------------------

AtomicQuery AtomicQuery::literal_goal(std::vector<Literal> context, Literal goal) {
  std::sort(context.begin(), context.end());
  context.erase(std::unique(context.begin(), context.end()), context.end());
  return AtomicQuery{std::move(context), std::move(goal)};
}

AtomicQuery AtomicQuery::absurdity(std::vector<Literal> context) {
  std::sort(context.begin(), context.end());
  context.erase(std::unique(context.begin(), context.end()), context.end());
  return AtomicQuery{std::move(context), std::nullopt};
}

std::vector<Literal> relevant_universe(const Base& base, const AtomicQuery& query) {
  std::vector<Literal> lits;
  auto put = [&](const Literal& l) {
    lits.push_back(l);
    lits.push_back(l.dual());
  };
  for (const auto& r : base.rules) {
    put(r.head);
    for (const auto& s : r.subrules) {
      put(s.premise);
      for (const auto& h : s.hyps) put(h);
    }
  }
  for (const auto& l : query.context) put(l);
  if (query.goal) put(*query.goal);
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

namespace {

// Sorted dual-closed universe: literal 2j is content j asserted, 2j+1 denied.
struct UIndex {
  std::vector<Literal> lits;
  std::unordered_map<Literal, unsigned, LiteralHash> pos;

  explicit UIndex(std::vector<Literal> universe) : lits(std::move(universe)) {
    for (unsigned i = 0; i < lits.size(); ++i) pos.emplace(lits[i], i);
  }
  int find(const Literal& l) const {
    auto it = pos.find(l);
    return it == pos.end() ? -1 : static_cast<int>(it->second);
  }
};

struct CompiledSub {
  std::uint64_t hyps;
  unsigned prem;
};
struct CompiledRule {
  unsigned head;
  std::vector<CompiledSub> subs;
  std::size_t idx;
};

std::vector<CompiledRule> compile_rules(const Base& base, const UIndex& u) {
  std::vector<CompiledRule> out;
  out.reserve(base.rules.size());
  for (std::size_t i = 0; i < base.rules.size(); ++i) {
    const AtomicRule& r = base.rules[i];
    CompiledRule cr;
    const int h = u.find(r.head);
    if (h < 0) throw PreconditionError("rule head outside engine universe");
    cr.head = static_cast<unsigned>(h);
    cr.idx = i;
    for (const auto& s : r.subrules) {
      CompiledSub cs{0, 0};
      const int p = u.find(s.premise);
      if (p < 0) throw PreconditionError("subrule premise outside engine universe");
      cs.prem = static_cast<unsigned>(p);
      for (const auto& hl : s.hyps) {
        const int hi = u.find(hl);
        if (hi < 0) throw PreconditionError("subrule hypothesis outside engine universe");
        cs.hyps |= std::uint64_t{1} << hi;
      }
      cr.subs.push_back(cs);
    }
    out.push_back(std::move(cr));
  }
  return out;
}

constexpr std::uint64_t kEven = 0x5555555555555555ULL;
constexpr std::uint64_t kOdd = 0xAAAAAAAAAAAAAAAAULL;

// bits of the dual literals of everything set in d
std::uint64_t dual_swap(std::uint64_t d) { return ((d & kEven) << 1) | ((d & kOdd) >> 1); }

}  // namespace

// ---------------------------------------------------------------------------
// Demand-driven saturation engine
// ---------------------------------------------------------------------------

struct DerivesEngine::Impl {
  UIndex u;
  std::vector<CompiledRule> rules;
  unsigned n;
  std::uint64_t all_mask;
  Caps caps;
  bool tracing;
  std::vector<DerivationStep> trace;

  struct Ctx {
    std::uint64_t members;
    std::uint64_t derived;
    bool bot = false;
    bool queued = false;
    std::vector<std::uint32_t> deps;
  };
  std::vector<Ctx> ctxs;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::deque<std::uint32_t> work;

  Impl(const Base& base, std::vector<Literal> universe, const Caps& caps_in, bool trace_in)
      : u(std::move(universe)), rules(compile_rules(base, u)),
        n(static_cast<unsigned>(u.lits.size())), caps(caps_in), tracing(trace_in) {
    if (n > caps.max_universe)
      throw ResourceError("universe of " + std::to_string(n) + " literals exceeds cap " +
                          std::to_string(caps.max_universe));
    if (n > 62) throw ResourceError("universe exceeds 62 literals");
    all_mask = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  }

  std::vector<Literal> ctx_literals(std::uint64_t mask) const {
    std::vector<Literal> out;
    for (unsigned i = 0; i < n; ++i)
      if ((mask >> i) & 1) out.push_back(u.lits[i]);
    return out;
  }

  void enqueue(std::uint32_t id) {
    if (!ctxs[id].queued) {
      ctxs[id].queued = true;
      work.push_back(id);
    }
  }

  std::uint32_t touch(std::uint64_t mask, std::int64_t dep) {
    auto it = index.find(mask);
    std::uint32_t id;
    if (it == index.end()) {
      if (ctxs.size() >= caps.max_contexts)
        throw ResourceError("saturation table exceeds " + std::to_string(caps.max_contexts) +
                            " contexts");
      id = static_cast<std::uint32_t>(ctxs.size());
      index.emplace(mask, id);
      ctxs.push_back(Ctx{mask, mask, false, false, {}});
      enqueue(id);
    } else {
      id = it->second;
    }
    if (dep >= 0 && static_cast<std::uint32_t>(dep) != id)
      ctxs[id].deps.push_back(static_cast<std::uint32_t>(dep));
    return id;
  }

  void notify(std::uint32_t id) {
    auto deps = std::move(ctxs[id].deps);
    ctxs[id].deps.clear();
    for (auto d : deps) enqueue(d);
  }

  void record(DerivationStep::Kind kind, std::uint64_t members, std::optional<Literal> fact,
              std::size_t rule_idx) {
    if (!tracing) return;
    trace.push_back(DerivationStep{kind, ctx_literals(members), std::move(fact), rule_idx});
  }

  void process(std::uint32_t id) {
    const std::uint64_t members = ctxs[id].members;
    bool changed_any = false;
    bool changed = true;
    while (changed) {
      changed = false;
      // APP: rule application, hypothetical premises read at extended contexts
      for (const CompiledRule& r : rules) {
        if (ctxs[id].bot) break;
        if ((ctxs[id].derived >> r.head) & 1) continue;
        bool ok = true;
        for (const CompiledSub& s : r.subs) {
          const std::uint64_t emask = members | s.hyps;
          const std::uint32_t e = emask == members ? id : touch(emask, id);
          if (!((ctxs[e].derived >> s.prem) & 1)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          ctxs[id].derived |= std::uint64_t{1} << r.head;
          record(DerivationStep::Kind::App, members, u.lits[r.head], r.idx);
          changed = changed_any = true;
        }
      }
      // ABS, then explosion: an inconsistent context derives everything
      if (!ctxs[id].bot && (ctxs[id].derived & dual_swap(ctxs[id].derived)) != 0) {
        ctxs[id].bot = true;
        record(DerivationStep::Kind::Abs, members, std::nullopt, 0);
        if (ctxs[id].derived != all_mask) {
          ctxs[id].derived = all_mask;
          record(DerivationStep::Kind::Explode, members, std::nullopt, 0);
        }
        changed = changed_any = true;
      }
      // DM: extend by an undecided literal, harvest its inconsistency
      if (!ctxs[id].bot) {
        for (unsigned m = 0; m < n; ++m) {
          const std::uint64_t mbit = std::uint64_t{1} << m;
          const std::uint64_t dbit = std::uint64_t{1} << (m ^ 1);
          if (ctxs[id].derived & (mbit | dbit)) continue;
          const std::uint32_t e = touch(members | mbit, id);
          if (ctxs[e].bot) {
            ctxs[id].derived |= dbit;
            record(DerivationStep::Kind::Dm, members, u.lits[m ^ 1], 0);
            changed = changed_any = true;
          }
        }
      }
    }
    if (changed_any) notify(id);
  }

  void run() {
    while (!work.empty()) {
      const std::uint32_t id = work.front();
      work.pop_front();
      ctxs[id].queued = false;
      process(id);
    }
  }

  std::uint64_t context_mask(std::span<const Literal> context) const {
    std::uint64_t mask = 0;
    for (const Literal& l : context) {
      const int i = u.find(l);
      if (i < 0) throw PreconditionError("context literal '" + l.str() + "' outside universe");
      mask |= std::uint64_t{1} << i;
    }
    return mask;
  }
};

DerivesEngine::DerivesEngine(const Base& base, std::vector<Literal> universe, const Caps& caps,
                             bool record_trace)
    : impl_(std::make_unique<Impl>(base, std::move(universe), caps, record_trace)) {}

DerivesEngine::~DerivesEngine() = default;
DerivesEngine::DerivesEngine(DerivesEngine&&) noexcept = default;
DerivesEngine& DerivesEngine::operator=(DerivesEngine&&) noexcept = default;

bool DerivesEngine::query(std::span<const Literal> context, const std::optional<Literal>& goal) {
  const std::uint64_t mask = impl_->context_mask(context);
  const std::uint32_t id = impl_->touch(mask, -1);
  impl_->run();
  if (!goal) return impl_->ctxs[id].bot;
  const int gi = impl_->u.find(*goal);
  if (gi < 0) throw PreconditionError("goal literal '" + goal->str() + "' outside universe");
  return (impl_->ctxs[id].derived >> gi) & 1;
}

DerivesEngine::DerivedSet DerivesEngine::derived_at(std::span<const Literal> context) {
  const std::uint64_t mask = impl_->context_mask(context);
  const std::uint32_t id = impl_->touch(mask, -1);
  impl_->run();
  DerivedSet out;
  out.absurdity = impl_->ctxs[id].bot;
  out.literals = impl_->ctx_literals(impl_->ctxs[id].derived);
  return out;
}

const std::vector<Literal>& DerivesEngine::universe() const { return impl_->u.lits; }
std::size_t DerivesEngine::contexts_materialized() const { return impl_->ctxs.size(); }
std::vector<DerivationStep> DerivesEngine::take_trace() { return std::move(impl_->trace); }

DerivationAnswer derives(const Base& base, const AtomicQuery& query, const Caps& caps,
                         bool record_trace) {
  DerivesEngine engine(base, relevant_universe(base, query), caps, record_trace);
  DerivationAnswer answer;
  answer.derivable = engine.query(query.context, query.goal);
  answer.universe = engine.universe();
  answer.contexts_materialized = engine.contexts_materialized();
  if (record_trace) answer.trace = engine.take_trace();
  return answer;
}

// ---------------------------------------------------------------------------
// Naive oracle
// ---------------------------------------------------------------------------

namespace {

std::vector<Literal> extended_universe(const Base& base, const AtomicQuery& query,
                                       unsigned extra_fresh_pairs) {
  std::vector<Literal> universe = relevant_universe(base, query);
  // mint fresh contents not used anywhere in the instance
  unsigned minted = 0;
  for (unsigned j = 1; minted < extra_fresh_pairs; ++j) {
    const std::string name = "fresh" + std::to_string(j);
    bool clash = false;
    for (const auto& l : universe)
      if (l.content == name) clash = true;
    if (clash) continue;
    universe.emplace_back(name, Polarity::Assert);
    universe.emplace_back(name, Polarity::Deny);
    ++minted;
  }
  std::sort(universe.begin(), universe.end());
  return universe;
}

}  // namespace

DerivationAnswer derives_oracle(const Base& base, const AtomicQuery& query,
                                unsigned extra_fresh_pairs, const Caps& caps) {
  (void)caps;
  UIndex u(extended_universe(base, query, extra_fresh_pairs));
  const unsigned n = static_cast<unsigned>(u.lits.size());
  if (n > 12)
    throw ResourceError("oracle universe of " + std::to_string(n) +
                        " literals exceeds the naive-closure cap of 12");
  const std::vector<CompiledRule> rules = compile_rules(base, u);
  const std::size_t m = std::size_t{1} << n;

  std::vector<std::uint16_t> derived(m);
  std::vector<std::uint8_t> bot(m, 0);
  for (std::size_t c = 0; c < m; ++c) derived[c] = static_cast<std::uint16_t>(c);

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < m; ++c) {
      for (const CompiledRule& r : rules) {
        if ((derived[c] >> r.head) & 1) continue;
        bool ok = true;
        for (const CompiledSub& s : r.subs) {
          const std::size_t e = c | static_cast<std::size_t>(s.hyps);
          if (!((derived[e] >> s.prem) & 1)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          derived[c] |= static_cast<std::uint16_t>(1u << r.head);
          changed = true;
        }
      }
      if (!bot[c] &&
          (derived[c] & static_cast<std::uint16_t>(dual_swap(derived[c]))) != 0) {
        bot[c] = 1;
        changed = true;
      }
      for (unsigned k = 0; k < n; ++k) {
        const std::uint16_t dbit = static_cast<std::uint16_t>(1u << (k ^ 1));
        if ((derived[c] & dbit) == 0 && bot[c | (std::size_t{1} << k)]) {
          derived[c] |= dbit;
          changed = true;
        }
      }
    }
  }

  std::size_t qmask = 0;
  for (const Literal& l : query.context) {
    const int i = u.find(l);
    if (i < 0) throw PreconditionError("oracle: context literal outside universe");
    qmask |= std::size_t{1} << i;
  }
  DerivationAnswer answer;
  answer.universe = u.lits;
  answer.contexts_materialized = m;
  if (query.goal) {
    const int gi = u.find(*query.goal);
    if (gi < 0) throw PreconditionError("oracle: goal literal outside universe");
    answer.derivable = (derived[qmask] >> gi) & 1;
  } else {
    answer.derivable = bot[qmask] != 0;
  }
  return answer;
}

// ---------------------------------------------------------------------------
// Trace replay
// ---------------------------------------------------------------------------

bool replay_trace(const Base& base, const AtomicQuery& query,
                  std::span<const DerivationStep> trace) {
  UIndex u(relevant_universe(base, query));
  const unsigned n = static_cast<unsigned>(u.lits.size());
  if (n > 62) return false;
  const std::uint64_t all_mask = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  const std::vector<CompiledRule> rules = compile_rules(base, u);

  struct St {
    std::uint64_t derived;
    bool bot;
  };
  std::unordered_map<std::uint64_t, St> state;
  auto ensure = [&](std::uint64_t mask) -> St& {
    return state.try_emplace(mask, St{mask, false}).first->second;
  };
  auto mask_of = [&](const std::vector<Literal>& lits) -> std::int64_t {
    std::uint64_t mask = 0;
    for (const auto& l : lits) {
      const int i = u.find(l);
      if (i < 0) return -1;
      mask |= std::uint64_t{1} << i;
    }
    return static_cast<std::int64_t>(mask);
  };

  for (const DerivationStep& step : trace) {
    const std::int64_t signed_mask = mask_of(step.context);
    if (signed_mask < 0) return false;
    const std::uint64_t cmask = static_cast<std::uint64_t>(signed_mask);
    ensure(cmask);
    switch (step.kind) {
      case DerivationStep::Kind::App: {
        if (step.rule_index >= rules.size() || !step.fact) return false;
        const CompiledRule& r = rules[step.rule_index];
        if (u.find(*step.fact) != static_cast<int>(r.head)) return false;
        for (const CompiledSub& s : r.subs) {
          const std::uint64_t ederived = ensure(cmask | s.hyps).derived;
          if (!((ederived >> s.prem) & 1)) return false;
        }
        ensure(cmask).derived |= std::uint64_t{1} << r.head;
        break;
      }
      case DerivationStep::Kind::Abs: {
        St& st = ensure(cmask);
        if ((st.derived & dual_swap(st.derived)) == 0) return false;
        st.bot = true;
        break;
      }
      case DerivationStep::Kind::Explode: {
        St& st = ensure(cmask);
        if (!st.bot) return false;
        st.derived = all_mask;
        break;
      }
      case DerivationStep::Kind::Dm: {
        if (!step.fact) return false;
        const int fi = u.find(*step.fact);
        if (fi < 0) return false;
        const bool ext_bot = ensure(cmask | (std::uint64_t{1} << (fi ^ 1))).bot;
        if (!ext_bot) return false;
        ensure(cmask).derived |= std::uint64_t{1} << fi;
        break;
      }
    }
  }

  std::uint64_t qmask = 0;
  for (const Literal& l : query.context) {
    const int i = u.find(l);
    if (i < 0) return false;
    qmask |= std::uint64_t{1} << i;
  }
  const St& final_state = ensure(qmask);
  if (query.goal) {
    const int gi = u.find(*query.goal);
    if (gi < 0) return false;
    return (final_state.derived >> gi) & 1;
  }
  return final_state.bot;
}

}  // namespace bes
