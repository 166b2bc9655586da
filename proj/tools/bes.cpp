// bes: a workbench for literal-based classical propositional logic --
// truth-table oracle, NK± proof checking, derivability in atomic bases,
// base-extension support, and the simulation-base completeness pipeline.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bes/bases.hpp"
#include "bes/calculus.hpp"
#include "bes/corpus.hpp"
#include "bes/enumerate.hpp"
#include "bes/errors.hpp"
#include "bes/semantics.hpp"
#include "bes/simulation.hpp"
#include "bes/support.hpp"
#include "bes/syntax.hpp"

using nlohmann::json;
using namespace bes;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Options {
  std::string format = "text";
  std::string gamma;
  std::string goal;
  std::string goal2;
  std::string base;
  std::string proof;
  std::string mode = "bounded";
  std::uint64_t seed = 0;
  unsigned depth = 0;  // 0 = per-command default
  unsigned count = 0;
  unsigned contents = 2;
  unsigned pool_depth = 1;
  unsigned max_contents = 16;
  unsigned max_universe = 0;  // 0 = per-command default
  bool exhaustive = false;
  bool trace = false;
};

struct Outcome {
  int exit_code = kOk;
  json records = json::array();
  std::vector<std::string> lines;
};

Caps caps_for(const Options& o, unsigned default_universe) {
  Caps caps;
  caps.max_contents = o.max_contents;
  caps.max_universe = o.max_universe ? o.max_universe : default_universe;
  return caps;
}

std::string slurp_or_inline(const std::string& value, bool looks_inline) {
  if (looks_inline) return value;
  std::ifstream in(value);
  if (!in.good()) throw ParseError("cannot open file '" + value + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Base load_base(const std::string& value) {
  const bool inline_text = value.find("=>") != std::string::npos;
  return parse_base(slurp_or_inline(value, inline_text));
}

json load_proof_json(const std::string& value) {
  const bool inline_text = !value.empty() && value[0] == '{';
  const std::string text = slurp_or_inline(value, inline_text);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ProofError(ProofErrorKind::Script, "", std::string("invalid JSON: ") + e.what());
  }
}

std::vector<Literal> parse_literal_list(const std::string& text) {
  std::vector<Literal> out;
  for (const Formula& f : parse_formula_list(text)) {
    if (!f.is_literal())
      throw ParseError("expected a literal, got '" + print(f) + "'", 0, 0);
    out.push_back(f.literal());
  }
  return out;
}

json witness_json(const SupportWitness& w) {
  json j;
  json ext = json::array();
  for (const auto& r : w.extension) ext.push_back(print_rule(r));
  j["extension"] = std::move(ext);
  if (w.distinguishing) j["distinguishing"] = w.distinguishing->str();
  j["judgement"] = w.judgement;
  if (w.countermodel) j["countermodel"] = w.countermodel->str();
  return j;
}

// -------------------------------------------------------------------------
// command handlers
// -------------------------------------------------------------------------

Outcome cmd_parse(const Options& o) {
  Outcome out;
  const Formula f = parse_formula(o.goal);
  json rec;
  rec["command"] = "parse";
  rec["input"] = o.goal;
  rec["verdict"] = "pass";
  rec["canonical"] = print(f);
  rec["weight"] = f.weight();
  out.records.push_back(rec);
  out.lines.push_back(print(f));
  return out;
}

Outcome cmd_dual(const Options& o) {
  Outcome out;
  const Formula f = parse_formula(o.goal);
  json rec;
  rec["command"] = "dual";
  rec["input"] = o.goal;
  rec["verdict"] = "pass";
  rec["dual"] = print(dual(f));
  rec["cong_with_double_dual"] = cong(f, dual(dual(f)));
  out.records.push_back(rec);
  out.lines.push_back(print(dual(f)));
  return out;
}

Outcome cmd_weight(const Options& o) {
  Outcome out;
  const Formula f = parse_formula(o.goal);
  json rec;
  rec["command"] = "weight";
  rec["input"] = o.goal;
  rec["verdict"] = "pass";
  rec["weight"] = f.weight();
  out.records.push_back(rec);
  out.lines.push_back(std::to_string(f.weight()));
  return out;
}

Outcome verdict_outcome(const std::string& command, const std::string& input, const Verdict& v,
                        bool positive_means_holds) {
  Outcome out;
  json rec;
  rec["command"] = command;
  rec["input"] = input;
  const bool positive = positive_means_holds ? v.holds : !v.holds;
  rec["verdict"] = positive ? "pass" : "fail";
  rec["holds"] = v.holds;
  if (v.witness) rec["witness"] = v.witness->str();
  out.records.push_back(rec);
  out.exit_code = positive ? kOk : kNegative;
  if (v.witness)
    out.lines.push_back(std::string(v.holds ? "holds" : "fails") + "  witness: " +
                        v.witness->str());
  else
    out.lines.push_back(v.holds ? "holds" : "fails");
  return out;
}

Outcome cmd_taut(const Options& o) {
  const Formula f = parse_formula(o.goal);
  return verdict_outcome("taut", o.goal, consequence({}, f, caps_for(o, 20)), true);
}

Outcome cmd_entails(const Options& o) {
  const auto gamma = parse_formula_list(o.gamma);
  const Formula f = parse_formula(o.goal);
  return verdict_outcome("entails", o.gamma + " |- " + o.goal,
                         consequence(gamma, f, caps_for(o, 20)), true);
}

Outcome cmd_equiv(const Options& o) {
  const auto lhs = parse_formula_list(o.gamma);
  if (lhs.size() != 1)
    throw PreconditionError("equiv takes exactly one formula in --gamma and one in --goal");
  const Formula g = parse_formula(o.goal);
  const Caps caps = caps_for(o, 20);
  Outcome out;
  const bool eq = equivalent(lhs[0], g, caps);
  json rec;
  rec["command"] = "equiv";
  rec["input"] = o.gamma + " == " + o.goal;
  rec["verdict"] = eq ? "pass" : "fail";
  rec["equivalent"] = eq;
  out.records.push_back(rec);
  out.exit_code = eq ? kOk : kNegative;
  out.lines.push_back(eq ? "equivalent" : "not equivalent");
  return out;
}

Outcome cmd_countermodel(const Options& o) {
  const auto gamma = parse_formula_list(o.gamma);
  const Formula f = parse_formula(o.goal);
  // positive verdict = a countermodel exists
  return verdict_outcome("countermodel", o.gamma + " |- " + o.goal,
                         consequence(gamma, f, caps_for(o, 20)), false);
}

Outcome cmd_lindenbaum(const Options& o) {
  const Formula f = parse_formula(o.goal);
  const LindenbaumResult r = lindenbaum(f, o.depth ? o.depth : 2, caps_for(o, 20));
  Outcome out;
  for (const auto& e : r.decided) {
    json rec;
    rec["command"] = "lindenbaum";
    rec["input"] = print(e.psi);
    rec["verdict"] = "pass";
    rec["side"] = e.positive ? "formula" : "dual";
    out.records.push_back(rec);
    out.lines.push_back(print(e.psi) + "  ->  " + (e.positive ? "formula" : "dual"));
  }
  json rec;
  rec["command"] = "lindenbaum";
  rec["input"] = o.goal;
  rec["verdict"] = "pass";
  rec["valuation"] = r.valuation.str();
  out.records.push_back(rec);
  out.lines.push_back("valuation: " + r.valuation.str());
  return out;
}

Outcome cmd_check_proof(const Options& o) {
  Outcome out;
  const ProofNode proof = proof_from_json(load_proof_json(o.proof));
  json rec;
  rec["command"] = "check-proof";
  rec["input"] = o.proof;
  try {
    const CheckedProof checked = check(proof);
    rec["verdict"] = "pass";
    rec["conclusion"] = print(checked.conclusion);
    json opens = json::array();
    for (const auto& a : checked.open_assumptions) opens.push_back(print(a));
    rec["open_assumptions"] = std::move(opens);
    rec["uses_classical_rule"] = checked.uses_classical_rule;
    out.lines.push_back("valid: " + print(checked.conclusion));
    std::string opens_line = "open assumptions:";
    for (const auto& a : checked.open_assumptions) opens_line += " " + print(a);
    out.lines.push_back(checked.open_assumptions.empty() ? "open assumptions: none"
                                                         : opens_line);
  } catch (const ProofError& e) {
    if (e.kind == ProofErrorKind::Script) throw;
    rec["verdict"] = "fail";
    rec["error_class"] = proof_error_kind_name(e.kind);
    rec["path"] = e.path;
    rec["message"] = e.what();
    out.exit_code = kNegative;
    out.lines.push_back(std::string("invalid: ") + proof_error_kind_name(e.kind) + " at " +
                        e.path);
  }
  out.records.push_back(rec);
  return out;
}

Outcome cmd_fuzz_proofs(const Options& o) {
  Outcome out;
  const auto names = default_contents(o.contents);
  const unsigned count = o.count ? o.count : 100;
  const auto batch = fuzz_derivations(o.seed, count, names, o.depth ? o.depth : 5);
  const Caps caps = caps_for(o, 20);
  std::size_t classical = 0;
  for (const auto& fp : batch) {
    const bool sound = consequence(fp.checked.open_assumptions, fp.checked.conclusion, caps).holds;
    if (fp.checked.uses_classical_rule) ++classical;
    json rec;
    rec["command"] = "fuzz-proofs";
    rec["input"] = print(fp.checked.conclusion);
    rec["verdict"] = sound ? "pass" : "fail";
    rec["classical"] = fp.checked.uses_classical_rule;
    json opens = json::array();
    for (const auto& a : fp.checked.open_assumptions) opens.push_back(print(a));
    rec["open_assumptions"] = std::move(opens);
    out.records.push_back(rec);
    if (!sound) out.exit_code = kNegative;
  }
  out.lines.push_back("generated " + std::to_string(batch.size()) + " checked proofs, " +
                      std::to_string(classical) + " with DM/EXC");
  return out;
}

Outcome cmd_derive(const Options& o) {
  Outcome out;
  const Base base = o.base.empty() ? Base{} : load_base(o.base);
  const auto ctx = parse_literal_list(o.gamma);
  AtomicQuery query = AtomicQuery::absurdity(ctx);
  std::string goal_text = "bot";
  {
    std::string trimmed = o.goal;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
    if (trimmed != "bot") {
      const Formula g = parse_formula(o.goal);
      if (!g.is_literal())
        throw PreconditionError("derive takes a literal or 'bot' as --goal");
      query = AtomicQuery::literal_goal(ctx, g.literal());
      goal_text = g.literal().str();
    }
  }
  const DerivationAnswer ans = derives(base, query, caps_for(o, 20), o.trace);
  json rec;
  rec["command"] = "derive";
  rec["input"] = o.gamma + " |- " + goal_text;
  rec["verdict"] = ans.derivable ? "pass" : "fail";
  rec["derivable"] = ans.derivable;
  json uni = json::array();
  for (const auto& l : ans.universe) uni.push_back(l.str());
  rec["universe"] = std::move(uni);
  rec["contexts"] = ans.contexts_materialized;
  if (ans.trace) {
    json steps = json::array();
    for (const auto& st : *ans.trace) {
      json sj;
      switch (st.kind) {
        case DerivationStep::Kind::App: sj["rule"] = "app"; break;
        case DerivationStep::Kind::Abs: sj["rule"] = "abs"; break;
        case DerivationStep::Kind::Dm: sj["rule"] = "dm"; break;
        case DerivationStep::Kind::Explode: sj["rule"] = "explode"; break;
      }
      std::string ctx_s;
      for (std::size_t i = 0; i < st.context.size(); ++i) {
        if (i) ctx_s += ", ";
        ctx_s += st.context[i].str();
      }
      sj["context"] = ctx_s;
      sj["fact"] = st.fact ? st.fact->str() : "bot";
      if (st.kind == DerivationStep::Kind::App) sj["rule_index"] = st.rule_index;
      steps.push_back(std::move(sj));
    }
    rec["trace"] = std::move(steps);
  }
  out.records.push_back(rec);
  out.exit_code = ans.derivable ? kOk : kNegative;
  out.lines.push_back(ans.derivable ? "derivable" : "not derivable");
  return out;
}

Outcome cmd_support(const Options& o) {
  Outcome out;
  SupportQuery q;
  q.base = o.base.empty() ? Base{} : load_base(o.base);
  q.context = parse_formula_list(o.gamma);
  q.goal = parse_formula(o.goal);
  SupportMode mode;
  if (o.mode == "oracle")
    mode = SupportMode::Oracle;
  else if (o.mode == "literal")
    mode = SupportMode::LiteralExact;
  else if (o.mode == "bounded")
    mode = SupportMode::Bounded;
  else
    throw PreconditionError("unknown support mode '" + o.mode + "'");
  SupportOptions opt;
  opt.pool_depth = o.pool_depth;
  opt.caps = caps_for(o, 20);
  const SupportVerdict v = support(q, mode, opt);
  json rec;
  rec["command"] = "support";
  rec["input"] = o.gamma + " |~ " + o.goal;
  rec["verdict"] = v.status == SupportStatus::Supported
                       ? "pass"
                       : (v.status == SupportStatus::Refuted ? "fail" : "unknown");
  rec["status"] = support_status_name(v.status);
  rec["mode"] = support_mode_name(v.mode);
  if (mode == SupportMode::Bounded) {
    rec["pool_size"] = v.pool_size;
    rec["pool_depth"] = v.pool_depth;
  }
  if (v.witness) rec["witness"] = witness_json(*v.witness);
  out.records.push_back(rec);
  out.exit_code = v.status == SupportStatus::Supported ? kOk : kNegative;
  std::string line = std::string(support_status_name(v.status)) + " (" +
                     support_mode_name(v.mode) + ")";
  if (v.witness) line += "  " + v.witness->judgement;
  out.lines.push_back(line);
  return out;
}

Outcome cmd_simulate(const Options& o) {
  Outcome out;
  const auto gamma = parse_formula_list(o.gamma);
  const Formula goal = parse_formula(o.goal);
  const SimulationBase sb = build_simulation_base(gamma, goal);
  json rec;
  rec["command"] = "simulate";
  rec["input"] = o.gamma + " |- " + o.goal;
  rec["verdict"] = "pass";
  json rules = json::array();
  for (const auto& r : sb.base.rules) rules.push_back(print_rule(r));
  rec["rules"] = std::move(rules);
  json map = json::array();
  for (const auto& e : sb.map.entries()) {
    json me;
    me["literal"] = e.literal.str();
    me["representative"] = print(e.representative);
    map.push_back(std::move(me));
  }
  rec["map"] = std::move(map);
  json fresh = json::array();
  for (const auto& c : sb.map.fresh_contents()) fresh.push_back(c);
  rec["fresh_contents"] = std::move(fresh);
  out.records.push_back(rec);

  for (const auto& r : sb.base.rules) out.lines.push_back(print_rule(r));
  out.lines.push_back("");
  for (const auto& e : sb.map.entries())
    out.lines.push_back(e.literal.str() + "\t" + print(e.representative));
  return out;
}

Outcome cmd_pipeline(const Options& o) {
  Outcome out;
  const auto gamma = parse_formula_list(o.gamma);
  const Formula goal = parse_formula(o.goal);
  const PipelineRecord r = pipeline(gamma, goal, caps_for(o, 44));
  json rec;
  rec["command"] = "pipeline";
  rec["input"] = o.gamma + " |- " + o.goal;
  rec["verdict"] = (r.agree && r.semantic) ? "pass" : "fail";
  rec["semantic"] = r.semantic;
  rec["simulated"] = r.simulated;
  rec["agree"] = r.agree;
  out.records.push_back(rec);
  out.exit_code = (r.semantic && r.simulated && r.agree) ? kOk : kNegative;
  out.lines.push_back(std::string("semantic=") + (r.semantic ? "true" : "false") +
                      " simulated=" + (r.simulated ? "true" : "false") +
                      " agree=" + (r.agree ? "true" : "false"));
  return out;
}

Outcome cmd_corpus(const Options& o) {
  Outcome out;
  std::vector<Sequent> sequents;
  const unsigned depth = o.depth ? o.depth : 2;
  if (o.exhaustive || o.count == 0)
    sequents = exhaustive_sequents(o.contents, depth);
  else
    sequents = random_sequents(o.contents, depth, o.count, o.seed);

  SupportOptions sopt;
  sopt.pool_depth = o.pool_depth;
  sopt.caps = caps_for(o, 44);
  const CorpusReport report = run_corpus(sequents, caps_for(o, 44), sopt, true);

  for (const auto& r : report.records) {
    json rec;
    rec["command"] = "corpus";
    rec["input"] = r.gamma + " |- " + r.goal;
    const bool pass = r.pipeline.agree && !r.cross_hard_failure;
    rec["verdict"] = pass ? "pass" : "fail";
    rec["semantic"] = r.pipeline.semantic;
    rec["simulated"] = r.pipeline.simulated;
    rec["agree"] = r.pipeline.agree;
    rec["oracle"] = support_status_name(r.oracle);
    rec["bounded"] = support_status_name(r.bounded);
    out.records.push_back(rec);
    if (!pass) out.exit_code = kNegative;
  }
  out.lines.push_back("sequents=" + std::to_string(report.records.size()) +
                      " agree=" + std::to_string(report.agree) +
                      " disagree=" + std::to_string(report.disagree) +
                      " cross_failures=" + std::to_string(report.cross_hard_failures) +
                      " unknown=" + std::to_string(report.cross_unknown));
  return out;
}

json config_json(const Options& o, const std::string& command) {
  json c;
  c["command"] = command;
  c["format"] = o.format;
  c["seed"] = o.seed;
  c["depth"] = o.depth;
  c["count"] = o.count;
  c["contents"] = o.contents;
  c["pool_depth"] = o.pool_depth;
  c["max_contents"] = o.max_contents;
  c["max_universe"] = o.max_universe;
  c["exhaustive"] = o.exhaustive;
  if (!o.gamma.empty()) c["gamma"] = o.gamma;
  if (!o.goal.empty()) c["goal"] = o.goal;
  if (!o.base.empty()) c["base"] = o.base;
  if (!o.proof.empty()) c["proof"] = o.proof;
  if (!o.mode.empty()) c["mode"] = o.mode;
  return c;
}

void emit(const Options& o, const std::string& command, const Outcome& out, long elapsed_ms) {
  if (o.format == "json") {
    json report;
    report["command"] = command;
    report["config"] = config_json(o, command);
    report["records"] = out.records;
    std::size_t pass = 0, fail = 0, unknown = 0;
    for (const auto& r : out.records) {
      const std::string v = r.value("verdict", "unknown");
      if (v == "pass")
        ++pass;
      else if (v == "fail")
        ++fail;
      else
        ++unknown;
    }
    report["summary"] = json{{"pass", pass}, {"fail", fail}, {"unknown", unknown}};
    report["elapsed_ms"] = elapsed_ms;
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& line : out.lines) std::cout << line << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bes: literal-based classical logic workbench"};
  app.require_subcommand(1);

  Options o;
  if (const char* env_seed = std::getenv("BES_SEED")) o.seed = std::strtoull(env_seed, nullptr, 10);

  std::map<std::string, Outcome (*)(const Options&)> handlers = {
      {"parse", cmd_parse},         {"dual", cmd_dual},
      {"weight", cmd_weight},       {"taut", cmd_taut},
      {"entails", cmd_entails},     {"equiv", cmd_equiv},
      {"countermodel", cmd_countermodel}, {"lindenbaum", cmd_lindenbaum},
      {"check-proof", cmd_check_proof},   {"fuzz-proofs", cmd_fuzz_proofs},
      {"derive", cmd_derive},       {"support", cmd_support},
      {"simulate", cmd_simulate},   {"pipeline", cmd_pipeline},
      {"corpus", cmd_corpus},
  };

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", o.seed, "RNG seed (default: BES_SEED env or 0)");
    sub->add_option("--max-contents", o.max_contents, "truth-table content cap");
    sub->add_option("--max-universe", o.max_universe, "derivability universe cap");
  };

  for (const auto& [name, fn] : handlers) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
    sub->add_option("--gamma", o.gamma, "context (comma-separated formulae)");
    sub->add_option("--goal", o.goal, "goal formula / literal");
    if (name == "check-proof") sub->add_option("--proof", o.proof, "proof script (path or JSON)");
    if (name == "derive" || name == "support")
      sub->add_option("--base", o.base, "base (path or inline rules)");
    if (name == "support") sub->add_option("--mode", o.mode, "oracle|literal|bounded");
    if (name == "support" || name == "corpus")
      sub->add_option("--pool-depth", o.pool_depth, "extension budget for bounded mode");
    if (name == "lindenbaum" || name == "fuzz-proofs" || name == "corpus")
      sub->add_option("--depth", o.depth,
                      "weight cap (lindenbaum: 2) / proof depth (fuzz: 5) / formula depth (corpus: 2)");
    if (name == "fuzz-proofs" || name == "corpus")
      sub->add_option("--count", o.count, "number of items to generate");
    if (name == "fuzz-proofs" || name == "corpus")
      sub->add_option("--contents", o.contents, "signature size (number of contents)");
    if (name == "corpus") sub->add_flag("--exhaustive", o.exhaustive, "exhaustive sequent set");
    if (name == "derive") sub->add_flag("--trace", o.trace, "record the saturation trace");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto started = std::chrono::steady_clock::now();
  try {
    const Outcome out = handlers.at(command)(o);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    emit(o, command, out, static_cast<long>(elapsed));
    return out.exit_code;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kResource;
  } catch (const ProofError& e) {
    std::cerr << "proof script error: " << e.what() << "\n";
    return e.kind == ProofErrorKind::Script ? kUsage : kNegative;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
