#pragma once

#include <span>
#include <string>
#include <vector>

#include "bes/rng.hpp"
#include "bes/syntax.hpp"

namespace bes {

// All formulae over the given contents with weight <= max_weight, in
// canonical (weight, print) order. Guarded against explosion.
std::vector<Formula> formulae_by_weight(std::span<const std::string> contents,
                                        unsigned max_weight);

// All formulae with level-depth <= max_depth (literals and constants have
// depth 1), in canonical order.
std::vector<Formula> formulae_by_depth(std::span<const std::string> contents,
                                       unsigned max_depth);

unsigned depth_of(const Formula& f);

// Seeded random formula of depth <= max_depth.
Formula random_formula(Rng& rng, std::span<const std::string> contents, unsigned max_depth);

// First k single-letter-ish content names: "a", "b", ..., deterministic.
std::vector<std::string> default_contents(unsigned k);

}  // namespace bes
