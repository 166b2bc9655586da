#include <doctest.h>

#include <fstream>
#include <sstream>

#include "bes/calculus.hpp"
#include "bes/enumerate.hpp"
#include "bes/errors.hpp"
#include "bes/semantics.hpp"

using namespace bes;

namespace {

const Formula ap = Formula::lit("a", Polarity::Assert);
const Formula an = Formula::lit("a", Polarity::Deny);
const Formula bp = Formula::lit("b", Polarity::Assert);

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  nlohmann::json j;
  in >> j;
  return j;
}

std::string golden_path(const char* name) {
  // tests run from the build tree; goldens live in the source tree
  for (const std::string prefix : {"goldens/", "../goldens/", "../../goldens/"}) {
    std::ifstream probe(prefix + name);
    if (probe.good()) return prefix + name;
  }
  return std::string("goldens/") + name;
}

ProofNode assume(Formula f) { return ProofNode{ProofRule::Assume, std::move(f), {}, {}, {}}; }

}  // namespace

TEST_CASE("Peirce golden proof validates with no open assumptions") {
  const ProofNode proof = proof_from_json(load_json(golden_path("peirce.proof.json")));
  const CheckedProof checked = check(proof);
  CHECK(checked.open_assumptions.empty());
  CHECK(checked.conclusion == parse_formula("((a+ -> b+) -> a+) -> a+"));
  CHECK(checked.uses_classical_rule);
  // and the conclusion is a tautology, as the truth tables confirm
  CHECK(consequence({}, checked.conclusion).holds);
}

TEST_CASE("Peirce mutations are rejected with the right error class") {
  const nlohmann::json golden = load_json(golden_path("peirce.proof.json"));

  SUBCASE("dropped discharge on the DM node") {
    nlohmann::json j = golden;
    j["premises"][0].erase("discharge");
    const ProofNode proof = proof_from_json(j);
    try {
      check(proof);
      FAIL("expected ProofError");
    } catch (const ProofError& e) {
      CHECK(e.kind == ProofErrorKind::UnboundHypothesis);
    }
  }

  SUBCASE("EXC premise swapped to a non-dual") {
    nlohmann::json j = golden;
    // inner EXC: replace the a- hypothesis by the label-3 a+ hypothesis
    auto& inner = j["premises"][0]["premises"][0]["premises"][1]["premises"][1]["premises"][0]
                   ["premises"][0]["premises"][1];
    inner["label"] = 3;
    inner["conclusion"] = "a+";
    const ProofNode proof = proof_from_json(j);
    try {
      check(proof);
      FAIL("expected ProofError");
    } catch (const ProofError& e) {
      CHECK(e.kind == ProofErrorKind::DualMismatch);
    }
  }

  SUBCASE("changed root conclusion") {
    nlohmann::json j = golden;
    j["conclusion"] = "((a+ -> b+) -> a+) -> b+";
    const ProofNode proof = proof_from_json(j);
    try {
      check(proof);
      FAIL("expected ProofError");
    } catch (const ProofError& e) {
      CHECK(e.kind == ProofErrorKind::RuleShape);
    }
  }
}

TEST_CASE("EXC with two assumptions") {
  ProofNode exc{ProofRule::Exc, Formula::bot(), {assume(ap), assume(an)}, {}, {}};
  const CheckedProof checked = check(exc);
  REQUIRE(checked.open_assumptions.size() == 2);
  CHECK(checked.open_assumptions[0] == ap);
  CHECK(checked.open_assumptions[1] == an);

  // either premise order is fine
  ProofNode swapped{ProofRule::Exc, Formula::bot(), {assume(an), assume(ap)}, {}, {}};
  CHECK(check(swapped).open_assumptions.size() == 2);

  // non-duals are rejected
  ProofNode bad{ProofRule::Exc, Formula::bot(), {assume(ap), assume(bp)}, {}, {}};
  CHECK_THROWS_AS(check(bad), ProofError);
}

TEST_CASE("EXC accepts cong-related duals, not just syntactic ones") {
  // premises a+ -> b+ and a+ & b-: the second is dual to the first
  ProofNode exc{ProofRule::Exc,
                Formula::bot(),
                {assume(parse_formula("a+ -> b+")), assume(parse_formula("a+ & b-"))},
                {},
                {}};
  CHECK(check(exc).open_assumptions.size() == 2);
  // a- | b+ is cong to a+ -> b+ (same dual), so it pairs with a+ & b- too
  ProofNode exc2{ProofRule::Exc,
                 Formula::bot(),
                 {assume(parse_formula("a- | b+")), assume(parse_formula("a+ & b-"))},
                 {},
                 {}};
  CHECK(check(exc2).open_assumptions.size() == 2);
}

TEST_CASE("DM discharges via cong, and pairs with ImpI") {
  // subtree: bot from [phi] and an assumed dual
  const Formula phi = parse_formula("a+ & b+");
  ProofNode body{ProofRule::Exc,
                 Formula::bot(),
                 {ProofNode{ProofRule::Hyp, phi, {}, {}, 1}, assume(dual(phi))},
                 {},
                 {}};
  // under DM the same subtree proves dual(phi)
  ProofNode dm{ProofRule::DM, dual(phi), {body}, 1, {}};
  const CheckedProof cdm = check(dm);
  CHECK(cdm.conclusion == parse_formula("a- | b-"));
  REQUIRE(cdm.open_assumptions.size() == 1);

  // under ImpI the same subtree proves phi -> bot
  ProofNode impi{ProofRule::ImpI, Formula::imp(phi, Formula::bot()), {body}, 1, {}};
  CHECK(check(impi).conclusion == parse_formula("a+ & b+ -> bot"));

  // vacuous discharge is allowed
  ProofNode vac{ProofRule::DM, ap, {ProofNode{ProofRule::Exc, Formula::bot(),
                                              {assume(bp), assume(dual(bp))}, {}, {}}},
                7, {}};
  CHECK(check(vac).conclusion == ap);
}

TEST_CASE("checker rejects malformed shapes") {
  // ImpI premise concluding the wrong formula
  ProofNode bad_impi{ProofRule::ImpI, Formula::imp(ap, bp), {assume(ap)}, 1, {}};
  CHECK_THROWS_AS(check(bad_impi), ProofError);

  // Hyp with a label no binder introduced
  ProofNode loose{ProofRule::Hyp, ap, {}, {}, 9};
  try {
    check(loose);
    FAIL("expected");
  } catch (const ProofError& e) {
    CHECK(e.kind == ProofErrorKind::UnboundHypothesis);
    CHECK(e.path == "root");
  }

  // discharge formula mismatch under ImpI
  ProofNode mism{ProofRule::ImpI, Formula::imp(ap, bp),
                 {ProofNode{ProofRule::ImpE,
                            bp,
                            {assume(Formula::imp(an, bp)), ProofNode{ProofRule::Hyp, an, {}, {}, 1}},
                            {},
                            {}}},
                 1,
                 {}};
  try {
    check(mism);
    FAIL("expected");
  } catch (const ProofError& e) {
    CHECK(e.kind == ProofErrorKind::DischargeMismatch);
    CHECK(e.path.find("premises[0]") != std::string::npos);
  }

  // nested duplicate label
  ProofNode dup{ProofRule::ImpI, Formula::imp(ap, Formula::imp(ap, bp)),
                {ProofNode{ProofRule::ImpI, Formula::imp(ap, bp), {assume(bp)}, 1, {}}},
                1,
                {}};
  try {
    check(dup);
    FAIL("expected");
  } catch (const ProofError& e) {
    CHECK(e.kind == ProofErrorKind::DuplicateLabel);
  }
}

TEST_CASE("proof JSON round-trip") {
  const ProofNode proof = proof_from_json(load_json(golden_path("peirce.proof.json")));
  const nlohmann::json j = proof_to_json(proof);
  const ProofNode again = proof_from_json(j);
  CHECK(proof_to_json(again) == j);
  CHECK(check(again).open_assumptions.empty());

  CHECK_THROWS_AS(proof_from_json(nlohmann::json{{"rule", "Wat"}, {"conclusion", "a+"}}),
                  ProofError);
  CHECK_THROWS_AS(proof_from_json(nlohmann::json{{"conclusion", "a+"}}), ProofError);
  // Assume accepts "formula" as the field name
  const ProofNode a = proof_from_json(nlohmann::json{{"rule", "Assume"}, {"formula", "a+"}});
  CHECK(a.conclusion == ap);
}

TEST_CASE("fuzzer: determinism, validity, classical coverage") {
  const auto contents = default_contents(2);
  const auto batch1 = fuzz_derivations(1, 100, contents, 5);
  const auto batch2 = fuzz_derivations(1, 100, contents, 5);
  REQUIRE(batch1.size() == 100);
  std::size_t classical = 0;
  for (std::size_t i = 0; i < batch1.size(); ++i) {
    CHECK(proof_to_json(batch1[i].proof) == proof_to_json(batch2[i].proof));
    if (batch1[i].checked.uses_classical_rule) ++classical;
  }
  CHECK(classical * 5 >= batch1.size());  // at least 20 percent exercise DM/EXC
}

TEST_CASE("fuzzer: soundness against the truth tables") {
  const auto contents = default_contents(2);
  const auto batch = fuzz_derivations(99, 150, contents, 5);
  for (const auto& fp : batch) {
    const Verdict v = consequence(fp.checked.open_assumptions, fp.checked.conclusion);
    CHECK_MESSAGE(v.holds, "unsound proof of ", print(fp.checked.conclusion));
  }
}

TEST_CASE("checker locality: grafting a checked proof of the same conclusion") {
  const auto contents = default_contents(2);
  auto batch = fuzz_derivations(5, 40, contents, 4);
  for (auto& fp : batch) {
    if (fp.proof.premises.empty()) continue;
    // replace the first premise subtree by an Assume of its conclusion
    ProofNode grafted = fp.proof;
    const Formula sub_concl = grafted.premises[0].conclusion;
    grafted.premises[0] = assume(sub_concl);
    CHECK(check(grafted).conclusion == fp.checked.conclusion);
  }
}
