#pragma once

#include <stdexcept>
#include <string>

namespace bes {

// Raised by the formula/base/proof-script parsers. `offset` is a character
// offset into the input, `token_index` the index of the offending token.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset, std::size_t token_index)
      : std::runtime_error(msg), offset(offset), token_index(token_index) {}
  std::size_t offset = 0;
  std::size_t token_index = 0;
};

// Raised when a configured cap (contents, universe, context table, pool)
// would be exceeded. Maps to exit code 3 in the CLI.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on precondition violations (e.g. lindenbaum on a tautology,
// valuation domain misses a content, support mode misuse).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ProofErrorKind {
  RuleShape,           // node shape does not match its rule
  UnboundHypothesis,   // Hyp label with no matching binder above it
  DischargeMismatch,   // Hyp formula differs from what the binder discharges
  DualMismatch,        // EXC premises / DM conclusion fail the duality test
  DuplicateLabel,      // nested binders reuse an active label
  Script,              // malformed proof-script JSON
};

const char* proof_error_kind_name(ProofErrorKind kind);

struct ProofError : std::runtime_error {
  ProofError(ProofErrorKind kind, const std::string& path, const std::string& msg)
      : std::runtime_error(msg), kind(kind), path(path) {}
  ProofErrorKind kind;
  std::string path;  // node path like "premises[0].premises[1]"
};

}  // namespace bes
