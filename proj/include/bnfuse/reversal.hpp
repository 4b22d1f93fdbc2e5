#pragma once

#include <utility>
#include <vector>

#include "bnfuse/digraph.hpp"

namespace bnfuse {

struct ReversalStep {
  Arc arc;             // the arc (u, v) that became (v, u)
  ArcSet added_arcs;   // arcs created to carry the parents across

  friend bool operator==(const ReversalStep&, const ReversalStep&) = default;
};

struct ReorderResult {
  Digraph digraph;
  std::vector<ReversalStep> steps;
  ArcSet new_arcs;
};

// Arcs of `now` that are neither in `original` nor reversals of arcs there.
ArcSet new_arcs_between(const Digraph& original, const Digraph& now);

// True when (u, v) is an arc and no other directed u -> v path exists.
bool is_legal_reversal(const Digraph& d, Arc arc);

// Arc reversal with parent transfer: (u, v) becomes (v, u), v inherits the
// parents of u it lacks, u inherits the parents of v it lacks. Arcs already
// present are not added twice and not reported.
std::pair<Digraph, ReversalStep> reverse_arc(const Digraph& d, Arc arc);

// Reversal without the acyclicity and legality checks; callers that already
// know the move is legal use this in search loops.
ReversalStep reverse_arc_in_place(Digraph& d, Arc arc);

enum class ReorderPolicy {
  // Reverse the violating arc whose tail is latest in the target ordering;
  // ties by arc identifiers.
  kLatestTail,
  // Same tail as kLatestTail, but among its violating arcs pick the one that
  // adds the fewest arcs.
  kFewestAdded,
};

// Reverses arcs until the digraph is consistent with `alpha`.
ReorderResult reorder(const Digraph& d, const Ordering& alpha,
                      ReorderPolicy policy = ReorderPolicy::kLatestTail);

}  // namespace bnfuse
