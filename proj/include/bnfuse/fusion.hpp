#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bnfuse/config.hpp"
#include "bnfuse/digraph.hpp"
#include "bnfuse/independence.hpp"

namespace bnfuse {

// I(v, boundary, remainder): v is independent of the remainder of its
// predecessors given the boundary.
struct BasisEntry {
  VertexId vertex = 0;
  VertexSet boundary;
  VertexSet remainder;

  friend bool operator==(const BasisEntry&, const BasisEntry&) = default;
};

// Recursive basis relative to an ordering. One entry per vertex after the
// first, in ordering sequence.
struct RecursiveBasis {
  std::vector<std::string> universe;
  Ordering ordering;
  std::vector<BasisEntry> entries;

  // Entries with a nonempty remainder; the others assert nothing.
  DependencyModel statements() const;

  friend bool operator==(const RecursiveBasis&, const RecursiveBasis&) = default;
};

// Recursive basis drawn from an acyclic digraph. For a consistent ordering
// the boundaries are the parent sets; otherwise each boundary is the unique
// minimal separator of v from its predecessors.
RecursiveBasis recursive_basis(const Digraph& d, const Ordering& alpha);

// Recursive basis drawn from an arbitrary model that is closed under weak
// union and intersection, by the same minimal-separator shrink. Used to check
// the unified basis against the agreement model directly.
RecursiveBasis recursive_basis_of_model(const DependencyModel& m, const Ordering& alpha);

Digraph dag_from_basis(const RecursiveBasis& basis);

// Union of the boundaries and intersection of the remainders, per vertex.
RecursiveBasis unified_recursive_basis(const std::vector<RecursiveBasis>& bases);

struct ExpertSet {
  std::vector<std::string> labels;
  std::vector<Digraph> dags;

  std::size_t size() const { return dags.size(); }
  const Digraph& front() const { return dags.front(); }
  // Throws DomainError unless m >= 1, labels match, vertex sets agree and
  // every digraph is acyclic.
  void validate() const;
};

using ExpertSubset = std::vector<std::size_t>;

Digraph consensus_dag(const ExpertSet& experts, const ExpertSubset& subset,
                      const Ordering& alpha);

// Size-k subsets in lexicographic order with their consensus DAGs.
std::vector<std::pair<ExpertSubset, Digraph>> consensus_all_subsets(
    const ExpertSet& experts, std::size_t k, const Ordering& alpha, const Caps& caps = {});

// Nontrivial canonical statements in the intersectional closure of the
// unified basis.
std::size_t retained_independencies(const ExpertSet& experts, const ExpertSubset& subset,
                                    const Ordering& alpha, const Caps& caps = {});

// Arcs created by the default reversal policy when each subset member is
// rearranged to alpha, summed over members.
std::size_t new_arcs_for(const ExpertSet& experts, const ExpertSubset& subset,
                         const Ordering& alpha);

enum class Objective {
  kRetainedIndependencies,  // maximize
  kMinNewArcs,
  kMinUnionArcs,
};

const char* objective_name(Objective o);
Objective parse_objective(const std::string& name);

// Raw value of the objective for one ordering. Larger is better only for
// kRetainedIndependencies.
std::int64_t objective_value(Objective o, const ExpertSet& experts,
                             const ExpertSubset& subset, const Ordering& alpha,
                             const Caps& caps = {});

struct OrderingScore {
  Ordering ordering;
  std::int64_t score = 0;
};

// Best ordering over all |V|! permutations; the lexicographically first
// ordering wins ties.
OrderingScore search_ordering_exhaustive(const ExpertSet& experts,
                                         const ExpertSubset& subset, Objective objective,
                                         const Caps& caps = {});

// All orderings reaching the optimum of `objective`.
std::vector<Ordering> optimal_orderings(const ExpertSet& experts, const ExpertSubset& subset,
                                        Objective objective, const Caps& caps = {});

// Appends, one at a time, the unplaced vertex with the fewest arcs from
// other unplaced vertices across the subset (those arcs would have to be
// reversed); ties by identifier.
Ordering search_ordering_greedy(const ExpertSet& experts, const ExpertSubset& subset);

ExpertSubset all_experts(const ExpertSet& experts);

}  // namespace bnfuse
