#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bes/syntax.hpp"

namespace bes {

// The twelve rules of NK± plus the two leaf forms. DM and Exc are the
// classical surface; everything above the line is plain NJ.
enum class ProofRule : std::uint8_t {
  TopI,
  BotE,
  ImpI,
  ImpE,
  AndI,
  AndE1,
  AndE2,
  OrI1,
  OrI2,
  OrE,
  DM,
  Exc,
  Hyp,
  Assume,
};

const char* rule_name(ProofRule r);
ProofRule rule_from_name(std::string_view name);  // throws ProofError(Script)

struct ProofNode {
  ProofRule rule = ProofRule::Assume;
  Formula conclusion = Formula::bot();
  std::vector<ProofNode> premises;
  std::optional<int> discharge;  // ImpI / OrE / DM binders
  std::optional<int> label;      // Hyp leaves
};

struct CheckedProof {
  Formula conclusion = Formula::bot();
  std::vector<Formula> open_assumptions;  // multiset in canonical order
  bool uses_classical_rule = false;       // contains DM or Exc
};

// Validates the tree against the rules: shapes, discharge binding, the
// cong-based duality tests for DM and Exc. Throws ProofError with the node
// path on the first violation.
CheckedProof check(const ProofNode& root);

// Proof-script JSON: {rule, conclusion, premises, discharge?, label?};
// Assume leaves may spell their formula as "formula" instead of "conclusion".
ProofNode proof_from_json(const nlohmann::json& j);
nlohmann::json proof_to_json(const ProofNode& node);

struct FuzzedProof {
  ProofNode proof;
  CheckedProof checked;
};

// Seeded forward generator of well-formed derivations over the given
// signature. Every returned proof has passed check(). Item i depends only on
// (seed, i), so shards generate identical corpora.
std::vector<FuzzedProof> fuzz_derivations(std::uint64_t seed, unsigned count,
                                          std::span<const std::string> contents,
                                          unsigned max_depth);

}  // namespace bes
