#pragma once

#include <cstddef>
#include <cstdint>

namespace bnfuse {

// Limits for the exhaustive routines. Every exact oracle checks the cap that
// applies to it and throws ScaleError instead of running away.
struct Caps {
  // Vertex count for simple-cycle enumeration.
  std::size_t cycle_vertices = 12;
  // Universe size for d-separation models and graphoid closure.
  std::size_t closure_universe = 6;
  // Vertex count whose factorial the ordering search may enumerate.
  std::size_t ordering_factorial = 7;
  // Candidate arcs for by-size subset enumeration (MRS, DMRS).
  std::size_t arc_subset = 16;
  // Strongly connected component size for the ordering DP behind MFAS.
  std::size_t dp_vertices = 20;
  // States (MNAS search) or branch nodes (hitting-set search).
  std::size_t search_frontier = 2000000;
  // Number of size-k expert subsets.
  std::size_t subsets = 1024;
  // Cycles counted per greedy step before the count is cut off.
  std::size_t cycle_budget = 20000;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

}  // namespace bnfuse
