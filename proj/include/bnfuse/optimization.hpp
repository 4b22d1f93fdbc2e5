#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bnfuse/config.hpp"
#include "bnfuse/digraph.hpp"
#include "bnfuse/reversal.hpp"

namespace bnfuse {

enum class ProblemKind {
  kMfas,   // delete arcs until acyclic
  kMrs,    // flip arcs until acyclic
  kDmrs,   // flip arcs of D1 until D1 u D2 is acyclic
  k2Dmrs,  // flip arcs of D1 u D2 until acyclic
  kMnas,   // reversal sequence on D1 with fewest generated arcs
  k2Mnas,  // same, reversals allowed on both digraphs
};

const char* problem_name(ProblemKind k);
ProblemKind parse_problem(const std::string& name);
std::size_t problem_arity(ProblemKind k);
bool is_sequence_problem(ProblemKind k);

struct ProblemInstance {
  ProblemKind kind = ProblemKind::kMfas;
  std::vector<Digraph> digraphs;

  // Arity and shared vertex sets. Two-digraph problems need an acyclic D1,
  // and an acyclic D2 except for DMRS, where a cyclic D2 is reported as
  // infeasible by the solver.
  void validate() const;
};

// Arcs are indexed in the instance's shared vertex set. The certificate is
// the acyclic digraph obtained by applying the arcs (deleted or flipped; for
// DMRS and 2DMRS it is the modified union).
struct ArcSetSolution {
  ArcSet arcs;
  std::size_t objective = 0;
  Digraph certificate;
};

struct Move {
  std::size_t graph = 0;  // 0 for D1, 1 for D2
  ReversalStep step;

  friend bool operator==(const Move&, const Move&) = default;
};

// A reversal sequence, the arcs it generated per digraph, and the final
// union. Objective is the total number of generated arcs.
struct SequenceSolution {
  std::vector<Move> steps;
  std::vector<ArcSet> new_arcs;
  std::size_t objective = 0;
  std::vector<Digraph> final_digraphs;
  Digraph certificate;
};

using Solution = std::variant<ArcSetSolution, SequenceSolution>;

// Minimum over vertex orderings of the backward-arc set, by dynamic
// programming over vertex subsets of each strongly connected component.
// Among minimum sets the lexicographically least sorted arc list wins.
ArcSetSolution solve_mfas_exact(const Digraph& d, const Caps& caps = {});

// By-size enumeration of flip sets within each strongly connected component;
// the lexicographically first minimum set wins.
ArcSetSolution solve_mrs_exact(const Digraph& d, const Caps& caps = {});

// By-size enumeration over the arcs of D1. Throws InfeasibleError when no
// subset works (only possible when D2 itself is cyclic).
ArcSetSolution solve_dmrs_exact(const Digraph& d1, const Digraph& d2, const Caps& caps = {});

// Minimum flip set over D1 u D2, found as a minimum cycle-hitting arc set of
// the union (a minimum deletion set is always a valid flip set).
ArcSetSolution solve_2dmrs_exact(const Digraph& d1, const Digraph& d2, const Caps& caps = {});

// Minimum set of non-fixed arcs meeting every directed cycle, by implicit
// hitting set: solve exactly over the cycles collected so far, then add the
// cycles that survive. Throws InfeasibleError if a cycle uses only fixed arcs.
ArcSet min_cycle_hitting_arcs(const Digraph& g, const ArcSet& fixed, const Caps& caps = {});

// Best-first search over reachable digraph states, ordered by generated-arc
// count and then by sequence length.
SequenceSolution solve_mnas_exact(const Digraph& d1, const Digraph& d2, const Caps& caps = {});
SequenceSolution solve_2mnas_exact(const Digraph& d1, const Digraph& d2,
                                   const Caps& caps = {});

ArcSetSolution greedy_arc_set(const ProblemInstance& instance, const Caps& caps = {});
SequenceSolution greedy_sequence(const ProblemInstance& instance, const Caps& caps = {});

Solution solve_exact(const ProblemInstance& instance, const Caps& caps = {});
Solution solve_greedy(const ProblemInstance& instance, const Caps& caps = {});

std::size_t objective_of(const Solution& s);

// Applies an arc set under the problem's semantics; nullopt if the arcs are
// not drawn from the allowed digraphs.
std::optional<Digraph> apply_arc_set(const ProblemInstance& instance, const ArcSet& arcs);
bool arc_set_feasible(const ProblemInstance& instance, const ArcSet& arcs);

// Replays moves from the instance's digraphs. Throws IllegalReversalError on
// an illegal move and DomainError on a move touching a frozen digraph.
SequenceSolution replay_sequence(const ProblemInstance& instance,
                                 const std::vector<Move>& moves);
// Replay reproduces every recorded field and the final union is acyclic.
bool sequence_verified(const ProblemInstance& instance, const SequenceSolution& s);

}  // namespace bnfuse
