#include "bes/calculus.hpp"

#include <algorithm>
#include <map>

#include "bes/enumerate.hpp"
#include "bes/errors.hpp"
#include "bes/rng.hpp"

namespace bes {

const char* rule_name(ProofRule r) {
  switch (r) {
    case ProofRule::TopI: return "TopI";
    case ProofRule::BotE: return "BotE";
    case ProofRule::ImpI: return "ImpI";
    case ProofRule::ImpE: return "ImpE";
    case ProofRule::AndI: return "AndI";
    case ProofRule::AndE1: return "AndE1";
    case ProofRule::AndE2: return "AndE2";
    case ProofRule::OrI1: return "OrI1";
    case ProofRule::OrI2: return "OrI2";
    case ProofRule::OrE: return "OrE";
    case ProofRule::DM: return "DM";
    case ProofRule::Exc: return "EXC";
    case ProofRule::Hyp: return "Hyp";
    case ProofRule::Assume: return "Assume";
  }
  return "?";
}

ProofRule rule_from_name(std::string_view name) {
  static const std::map<std::string_view, ProofRule> table = {
      {"TopI", ProofRule::TopI},   {"BotE", ProofRule::BotE}, {"ImpI", ProofRule::ImpI},
      {"ImpE", ProofRule::ImpE},   {"AndI", ProofRule::AndI}, {"AndE1", ProofRule::AndE1},
      {"AndE2", ProofRule::AndE2}, {"OrI1", ProofRule::OrI1}, {"OrI2", ProofRule::OrI2},
      {"OrE", ProofRule::OrE},     {"DM", ProofRule::DM},     {"EXC", ProofRule::Exc},
      {"Hyp", ProofRule::Hyp},     {"Assume", ProofRule::Assume},
  };
  auto it = table.find(name);
  if (it == table.end())
    throw ProofError(ProofErrorKind::Script, "", "unknown rule name '" + std::string(name) + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// Checker
// ---------------------------------------------------------------------------

namespace {

// What a discharge label accepts at its Hyp leaves. ImpI and OrE bind an
// exact formula; DM accepts any phi with cong(chi, dual(phi)) for its
// conclusion chi, since dual is not injective on formulae.
struct Binder {
  bool cong_mode = false;
  Formula formula = Formula::bot();  // exact formula, or the DM conclusion chi

  bool accepts(const Formula& leaf) const {
    if (!cong_mode) return leaf == formula;
    return cong(formula, dual(leaf));
  }
};

using Env = std::map<int, Binder>;

class Checker {
 public:
  CheckedProof run(const ProofNode& root) {
    Env env;
    visit(root, env, "root");
    std::sort(opens_.begin(), opens_.end(), formula_less);
    return CheckedProof{root.conclusion, std::move(opens_), classical_};
  }

 private:
  [[noreturn]] static void fail(ProofErrorKind kind, const std::string& path,
                                const std::string& msg) {
    throw ProofError(kind, path, msg + " (at " + path + ")");
  }

  static void need_premises(const ProofNode& n, std::size_t count, const std::string& path) {
    if (n.premises.size() != count)
      fail(ProofErrorKind::RuleShape, path,
           std::string(rule_name(n.rule)) + " expects " + std::to_string(count) +
               " premises, got " + std::to_string(n.premises.size()));
  }

  void bind_and_visit(const ProofNode& premise, Env env, std::optional<int> label,
                      Binder binder, const std::string& path, const std::string& sub) {
    if (label) {
      if (env.count(*label))
        fail(ProofErrorKind::DuplicateLabel, path,
             "discharge label " + std::to_string(*label) + " already bound on this path");
      env.emplace(*label, std::move(binder));
    }
    visit(premise, env, path + "." + sub);
  }

  void visit(const ProofNode& n, const Env& env, const std::string& path) {
    auto sub = [&](std::size_t i) { return "premises[" + std::to_string(i) + "]"; };
    switch (n.rule) {
      case ProofRule::Assume:
        need_premises(n, 0, path);
        opens_.push_back(n.conclusion);
        return;

      case ProofRule::Hyp: {
        need_premises(n, 0, path);
        if (!n.label)
          fail(ProofErrorKind::RuleShape, path, "Hyp leaf without a label");
        auto it = env.find(*n.label);
        if (it == env.end())
          fail(ProofErrorKind::UnboundHypothesis, path,
               "unbound hypothesis label " + std::to_string(*n.label));
        if (!it->second.accepts(n.conclusion)) {
          const auto kind = it->second.cong_mode ? ProofErrorKind::DualMismatch
                                                 : ProofErrorKind::DischargeMismatch;
          fail(kind, path,
               "hypothesis '" + print(n.conclusion) + "' not dischargeable by label " +
                   std::to_string(*n.label));
        }
        return;
      }

      case ProofRule::TopI:
        need_premises(n, 0, path);
        if (n.conclusion != Formula::top())
          fail(ProofErrorKind::RuleShape, path, "TopI must conclude top");
        return;

      case ProofRule::BotE:
        need_premises(n, 1, path);
        if (n.premises[0].conclusion != Formula::bot())
          fail(ProofErrorKind::RuleShape, path, "BotE premise must conclude bot");
        visit(n.premises[0], env, path + "." + sub(0));
        return;

      case ProofRule::ImpI: {
        need_premises(n, 1, path);
        if (n.conclusion.kind() != FormulaKind::Imp)
          fail(ProofErrorKind::RuleShape, path, "ImpI must conclude an implication");
        if (n.premises[0].conclusion != n.conclusion.rhs())
          fail(ProofErrorKind::RuleShape, path,
               "ImpI premise must conclude the consequent");
        bind_and_visit(n.premises[0], env, n.discharge, Binder{false, n.conclusion.lhs()},
                       path, sub(0));
        return;
      }

      case ProofRule::ImpE: {
        need_premises(n, 2, path);
        const Formula& major = n.premises[0].conclusion;
        if (major.kind() != FormulaKind::Imp)
          fail(ProofErrorKind::RuleShape, path, "ImpE major premise must be an implication");
        if (major.rhs() != n.conclusion)
          fail(ProofErrorKind::RuleShape, path, "ImpE conclusion must be the consequent");
        if (n.premises[1].conclusion != major.lhs())
          fail(ProofErrorKind::RuleShape, path, "ImpE minor premise must be the antecedent");
        visit(n.premises[0], env, path + "." + sub(0));
        visit(n.premises[1], env, path + "." + sub(1));
        return;
      }

      case ProofRule::AndI:
        need_premises(n, 2, path);
        if (n.conclusion.kind() != FormulaKind::And ||
            n.premises[0].conclusion != n.conclusion.lhs() ||
            n.premises[1].conclusion != n.conclusion.rhs())
          fail(ProofErrorKind::RuleShape, path, "AndI premises must be the two conjuncts");
        visit(n.premises[0], env, path + "." + sub(0));
        visit(n.premises[1], env, path + "." + sub(1));
        return;

      case ProofRule::AndE1:
      case ProofRule::AndE2: {
        need_premises(n, 1, path);
        const Formula& major = n.premises[0].conclusion;
        if (major.kind() != FormulaKind::And)
          fail(ProofErrorKind::RuleShape, path, "AndE premise must be a conjunction");
        const Formula& expect = n.rule == ProofRule::AndE1 ? major.lhs() : major.rhs();
        if (n.conclusion != expect)
          fail(ProofErrorKind::RuleShape, path, "AndE conclusion must be the projected conjunct");
        visit(n.premises[0], env, path + "." + sub(0));
        return;
      }

      case ProofRule::OrI1:
      case ProofRule::OrI2: {
        need_premises(n, 1, path);
        if (n.conclusion.kind() != FormulaKind::Or)
          fail(ProofErrorKind::RuleShape, path, "OrI must conclude a disjunction");
        const Formula& expect =
            n.rule == ProofRule::OrI1 ? n.conclusion.lhs() : n.conclusion.rhs();
        if (n.premises[0].conclusion != expect)
          fail(ProofErrorKind::RuleShape, path, "OrI premise must be the injected disjunct");
        visit(n.premises[0], env, path + "." + sub(0));
        return;
      }

      case ProofRule::OrE: {
        need_premises(n, 3, path);
        const Formula& major = n.premises[0].conclusion;
        if (major.kind() != FormulaKind::Or)
          fail(ProofErrorKind::RuleShape, path, "OrE major premise must be a disjunction");
        if (n.premises[1].conclusion != n.conclusion ||
            n.premises[2].conclusion != n.conclusion)
          fail(ProofErrorKind::RuleShape, path, "OrE branches must conclude the conclusion");
        visit(n.premises[0], env, path + "." + sub(0));
        bind_and_visit(n.premises[1], env, n.discharge, Binder{false, major.lhs()}, path, sub(1));
        bind_and_visit(n.premises[2], env, n.discharge, Binder{false, major.rhs()}, path, sub(2));
        return;
      }

      case ProofRule::DM: {
        classical_ = true;
        need_premises(n, 1, path);
        if (n.premises[0].conclusion != Formula::bot())
          fail(ProofErrorKind::RuleShape, path, "DM premise must conclude bot");
        bind_and_visit(n.premises[0], env, n.discharge, Binder{true, n.conclusion}, path, sub(0));
        return;
      }

      case ProofRule::Exc: {
        classical_ = true;
        need_premises(n, 2, path);
        if (n.conclusion != Formula::bot())
          fail(ProofErrorKind::RuleShape, path, "EXC must conclude bot");
        const Formula& p = n.premises[0].conclusion;
        const Formula& q = n.premises[1].conclusion;
        // premise order normalized: accept the dual pair either way around
        if (!cong(q, dual(p)) && !cong(p, dual(q)))
          fail(ProofErrorKind::DualMismatch, path,
               "EXC premises '" + print(p) + "' and '" + print(q) + "' are not duals");
        visit(n.premises[0], env, path + "." + sub(0));
        visit(n.premises[1], env, path + "." + sub(1));
        return;
      }
    }
    fail(ProofErrorKind::RuleShape, path, "unknown rule");
  }

  std::vector<Formula> opens_;
  bool classical_ = false;
};

}  // namespace

CheckedProof check(const ProofNode& root) { return Checker().run(root); }

// ---------------------------------------------------------------------------
// Proof-script JSON
// ---------------------------------------------------------------------------

ProofNode proof_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw ProofError(ProofErrorKind::Script, "", "proof node must be a JSON object");
  ProofNode node;
  if (!j.contains("rule") || !j["rule"].is_string())
    throw ProofError(ProofErrorKind::Script, "", "proof node missing string field 'rule'");
  node.rule = rule_from_name(j["rule"].get<std::string>());

  const char* formula_field = nullptr;
  if (j.contains("conclusion"))
    formula_field = "conclusion";
  else if (node.rule == ProofRule::Assume && j.contains("formula"))
    formula_field = "formula";
  if (formula_field == nullptr)
    throw ProofError(ProofErrorKind::Script, "", "proof node missing 'conclusion'");
  if (!j[formula_field].is_string())
    throw ProofError(ProofErrorKind::Script, "", "'conclusion' must be a formula string");
  try {
    node.conclusion = parse_formula(j[formula_field].get<std::string>());
  } catch (const ParseError& e) {
    throw ProofError(ProofErrorKind::Script, "",
                     std::string("bad formula in proof script: ") + e.what());
  }

  if (j.contains("discharge")) {
    if (!j["discharge"].is_number_integer() || j["discharge"].get<int>() <= 0)
      throw ProofError(ProofErrorKind::Script, "", "'discharge' must be a positive integer");
    node.discharge = j["discharge"].get<int>();
  }
  if (j.contains("label")) {
    if (!j["label"].is_number_integer() || j["label"].get<int>() <= 0)
      throw ProofError(ProofErrorKind::Script, "", "'label' must be a positive integer");
    node.label = j["label"].get<int>();
  }
  if (j.contains("premises")) {
    if (!j["premises"].is_array())
      throw ProofError(ProofErrorKind::Script, "", "'premises' must be an array");
    for (const auto& p : j["premises"]) node.premises.push_back(proof_from_json(p));
  }
  return node;
}

nlohmann::json proof_to_json(const ProofNode& node) {
  nlohmann::json j;
  j["rule"] = rule_name(node.rule);
  j["conclusion"] = print(node.conclusion);
  if (node.discharge) j["discharge"] = *node.discharge;
  if (node.label) j["label"] = *node.label;
  if (!node.premises.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : node.premises) arr.push_back(proof_to_json(p));
    j["premises"] = std::move(arr);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Fuzzer
// ---------------------------------------------------------------------------

namespace {

class Generator {
 public:
  Generator(Rng& rng, std::span<const std::string> contents) : rng_(rng), contents_(contents) {}

  ProofNode gen(unsigned depth) {
    if (depth <= 1) return leaf();
    switch (rng_.below(16)) {
      case 0: return gen_imp_i(depth);
      case 1: return gen_imp_e(depth);
      case 2: return gen_and_i(depth);
      case 3: return gen_and_e(depth, true);
      case 4: return gen_and_e(depth, false);
      case 5: return gen_or_i(depth, true);
      case 6: return gen_or_i(depth, false);
      case 7: return gen_or_e(depth);
      case 8: case 9: return gen_dm(depth);
      case 10: case 11: return gen_exc(depth);
      case 12: return gen_bot_e(depth);
      case 13: return ProofNode{ProofRule::TopI, Formula::top(), {}, {}, {}};
      default: return leaf();
    }
  }

 private:
  Formula small_formula() { return random_formula(rng_, contents_, 2); }

  ProofNode assume(Formula f) { return ProofNode{ProofRule::Assume, std::move(f), {}, {}, {}}; }

  ProofNode leaf() {
    if (!scope_.empty() && rng_.chance(1, 3)) {
      const auto& [label, formula] = scope_[rng_.below(scope_.size())];
      return ProofNode{ProofRule::Hyp, formula, {}, {}, label};
    }
    if (rng_.chance(1, 8)) return ProofNode{ProofRule::TopI, Formula::top(), {}, {}, {}};
    return assume(small_formula());
  }

  ProofNode gen_imp_i(unsigned depth) {
    const Formula alpha = small_formula();
    const int label = next_label_++;
    scope_.emplace_back(label, alpha);
    ProofNode body = gen(depth - 1);
    scope_.pop_back();
    Formula concl = Formula::imp(alpha, body.conclusion);
    return ProofNode{ProofRule::ImpI, std::move(concl), {std::move(body)}, label, {}};
  }

  ProofNode gen_imp_e(unsigned depth) {
    ProofNode minor = gen(depth - 1);
    const Formula beta = small_formula();
    ProofNode major = gen_concluding(Formula::imp(minor.conclusion, beta), depth - 1);
    return ProofNode{ProofRule::ImpE, beta, {std::move(major), std::move(minor)}, {}, {}};
  }

  ProofNode gen_and_i(unsigned depth) {
    ProofNode l = gen(depth - 1);
    ProofNode r = gen(depth - 1);
    Formula concl = Formula::conj(l.conclusion, r.conclusion);
    return ProofNode{ProofRule::AndI, std::move(concl), {std::move(l), std::move(r)}, {}, {}};
  }

  ProofNode gen_and_e(unsigned depth, bool first) {
    const Formula a = small_formula();
    const Formula b = small_formula();
    ProofNode major = gen_concluding(Formula::conj(a, b), depth - 1);
    return ProofNode{first ? ProofRule::AndE1 : ProofRule::AndE2, first ? a : b,
                     {std::move(major)}, {}, {}};
  }

  ProofNode gen_or_i(unsigned depth, bool first) {
    ProofNode sub = gen(depth - 1);
    const Formula other = small_formula();
    Formula concl = first ? Formula::disj(sub.conclusion, other)
                          : Formula::disj(other, sub.conclusion);
    return ProofNode{first ? ProofRule::OrI1 : ProofRule::OrI2, std::move(concl),
                     {std::move(sub)}, {}, {}};
  }

  ProofNode gen_or_e(unsigned depth) {
    const Formula a = small_formula();
    const Formula b = small_formula();
    ProofNode major = gen_concluding(Formula::disj(a, b), depth - 1);
    const int label = next_label_++;
    scope_.emplace_back(label, a);
    ProofNode branch1 = gen(depth - 1);
    scope_.pop_back();
    const Formula psi = branch1.conclusion;
    scope_.emplace_back(label, b);
    ProofNode branch2 = gen_concluding(psi, depth - 1);
    scope_.pop_back();
    return ProofNode{ProofRule::OrE, psi,
                     {std::move(major), std::move(branch1), std::move(branch2)}, label, {}};
  }

  ProofNode gen_dm(unsigned depth) {
    const Formula phi = small_formula();
    const int label = next_label_++;
    scope_.emplace_back(label, phi);
    ProofNode body = gen_bot(depth - 1);
    scope_.pop_back();
    return ProofNode{ProofRule::DM, dual(phi), {std::move(body)}, label, {}};
  }

  ProofNode gen_exc(unsigned depth) {
    ProofNode p = gen(depth - 1);
    ProofNode q = gen_concluding(dual(p.conclusion), depth - 1);
    std::vector<ProofNode> prems;
    if (rng_.chance(1, 2)) {
      prems.push_back(std::move(p));
      prems.push_back(std::move(q));
    } else {
      prems.push_back(std::move(q));
      prems.push_back(std::move(p));
    }
    return ProofNode{ProofRule::Exc, Formula::bot(), std::move(prems), {}, {}};
  }

  ProofNode gen_bot_e(unsigned depth) {
    ProofNode body = gen_bot(depth - 1);
    return ProofNode{ProofRule::BotE, small_formula(), {std::move(body)}, {}, {}};
  }

  ProofNode gen_bot(unsigned depth) {
    // a Hyp concluding bot is impossible; EXC over a dual pair always works
    const Formula phi = depth >= 2 ? small_formula()
                                   : Formula::lit(std::string(contents_[rng_.below(contents_.size())]),
                                                  Polarity::Assert);
    ProofNode p = depth >= 2 ? gen_concluding(phi, depth - 1) : assume(phi);
    ProofNode q = depth >= 2 ? gen_concluding(dual(phi), depth - 1) : assume(dual(phi));
    return ProofNode{ProofRule::Exc, Formula::bot(), {std::move(p), std::move(q)}, {}, {}};
  }

  ProofNode gen_concluding(const Formula& target, unsigned depth) {
    // matching hypothesis in scope
    if (rng_.chance(1, 3)) {
      for (const auto& [label, formula] : scope_)
        if (formula == target) return ProofNode{ProofRule::Hyp, target, {}, {}, label};
    }
    if (depth <= 1 || rng_.chance(1, 4)) {
      if (target == Formula::top()) return ProofNode{ProofRule::TopI, target, {}, {}, {}};
      return assume(target);
    }
    switch (target.kind()) {
      case FormulaKind::Imp: {
        const int label = next_label_++;
        scope_.emplace_back(label, target.lhs());
        ProofNode body = gen_concluding(target.rhs(), depth - 1);
        scope_.pop_back();
        return ProofNode{ProofRule::ImpI, target, {std::move(body)}, label, {}};
      }
      case FormulaKind::And: {
        ProofNode l = gen_concluding(target.lhs(), depth - 1);
        ProofNode r = gen_concluding(target.rhs(), depth - 1);
        return ProofNode{ProofRule::AndI, target, {std::move(l), std::move(r)}, {}, {}};
      }
      case FormulaKind::Or: {
        const bool first = rng_.chance(1, 2);
        ProofNode sub = gen_concluding(first ? target.lhs() : target.rhs(), depth - 1);
        return ProofNode{first ? ProofRule::OrI1 : ProofRule::OrI2, target,
                         {std::move(sub)}, {}, {}};
      }
      case FormulaKind::Top:
        return ProofNode{ProofRule::TopI, target, {}, {}, {}};
      case FormulaKind::Bot:
        return gen_bot(depth);
      case FormulaKind::Lit: {
        switch (rng_.below(3)) {
          case 0: {
            ProofNode body = gen_bot(depth - 1);
            return ProofNode{ProofRule::BotE, target, {std::move(body)}, {}, {}};
          }
          case 1: {
            ProofNode minor = gen(depth - 1);
            ProofNode major = assume(Formula::imp(minor.conclusion, target));
            return ProofNode{ProofRule::ImpE, target, {std::move(major), std::move(minor)},
                             {}, {}};
          }
          default:
            return assume(target);
        }
      }
    }
    return assume(target);
  }

  Rng& rng_;
  std::span<const std::string> contents_;
  std::vector<std::pair<int, Formula>> scope_;
  int next_label_ = 1;
};

}  // namespace

std::vector<FuzzedProof> fuzz_derivations(std::uint64_t seed, unsigned count,
                                          std::span<const std::string> contents,
                                          unsigned max_depth) {
  if (contents.empty()) throw PreconditionError("fuzz_derivations needs a nonempty signature");
  std::vector<FuzzedProof> out;
  out.reserve(count);
  for (unsigned i = 0; i < count; ++i) {
    Rng rng(Rng::derive_seed(seed, i));
    Generator g(rng, contents);
    ProofNode proof = g.gen(max_depth);
    CheckedProof checked = check(proof);  // generator output must validate
    out.push_back(FuzzedProof{std::move(proof), std::move(checked)});
  }
  return out;
}

}  // namespace bes
