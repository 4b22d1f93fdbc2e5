#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bnfuse/digraph.hpp"
#include "bnfuse/optimization.hpp"
#include "bnfuse/reductions.hpp"

namespace bnfuse {

using Rng = std::mt19937_64;

// Names "a", "b", ... for n <= 26, "v00", "v01", ... beyond.
std::vector<std::string> vertex_names(std::size_t n);

// Each ordered pair (u, v), u != v, becomes an arc with probability p; at
// most `max_arcs` arcs are kept (a uniformly chosen subset).
Digraph random_digraph(Rng& rng, std::size_t n, double p, std::size_t max_arcs);

// Arcs drawn forward in a random hidden ordering, so the result is acyclic.
Digraph random_dag(Rng& rng, std::size_t n, double p, std::size_t max_arcs);

// Uniform random permutation of the vertices of an n-vertex digraph.
Ordering random_ordering(Rng& rng, std::size_t n);

// Source instance for a reduction: 2 to 4 vertices, at most 5 arcs per
// digraph; MRS sources may be cyclic, DMRS and MNAS sources are DAG pairs.
ProblemInstance random_reduction_source(Rng& rng, ReductionKind kind);

}  // namespace bnfuse
