#pragma once

#include <cstddef>
#include <cstdint>

namespace bes {

// Resource caps for the exhaustive engines. Exceeding a cap raises
// ResourceError; it never silently truncates a computation.
struct Caps {
  // Max distinct contents per truth-table query (2^k valuations).
  unsigned max_contents = 16;
  // Max literals in a derivability universe (context masks are uint64_t).
  unsigned max_universe = 20;
  // Max materialized contexts per saturation run.
  std::size_t max_contexts = std::size_t{1} << 20;
};

}  // namespace bes
