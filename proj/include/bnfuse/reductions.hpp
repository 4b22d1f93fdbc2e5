#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bnfuse/config.hpp"
#include "bnfuse/digraph.hpp"
#include "bnfuse/optimization.hpp"

namespace bnfuse {

enum class ReductionKind {
  kMrsToDmrs,     // each arc split into three, middle part in D1
  kDmrsTo2Dmrs,   // each D2 arc replaced by |V|^2 parallel two-arc paths
  kMrsToMnas,     // each arc split with a third vertex forcing a new arc
  kMnasTo2Mnas,   // each vertex gets |V|^2 fresh parents in D2
};

const char* reduction_name(ReductionKind k);
ReductionKind parse_reduction(const std::string& name);
ProblemKind reduction_source(ReductionKind k);
ProblemKind reduction_target(ReductionKind k);

// What a target vertex stands for: a source vertex (origin holds its name),
// or a gadget vertex built for a source arc (origin holds tail and head) or
// for a source vertex. `role` names the gadget slot.
struct Provenance {
  std::string role;  // "source", "u", "v", "w", "path", "parent"
  std::vector<std::string> origin;
  std::size_t index = 0;  // 1-based copy number for "path" and "parent"

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ReductionArtifact {
  ReductionKind kind = ReductionKind::kMrsToDmrs;
  ProblemInstance source;
  ProblemInstance target;
  std::map<std::string, Provenance> provenance;  // keyed by target vertex name
};

// Throws DomainError if a gadget name collides with a source vertex.
ReductionArtifact reduce_mrs_to_dmrs(const Digraph& d);
ReductionArtifact reduce_dmrs_to_2dmrs(const Digraph& d1, const Digraph& d2);
ReductionArtifact reduce_mrs_to_mnas(const Digraph& d);
ReductionArtifact reduce_mnas_to_2mnas(const Digraph& d1, const Digraph& d2);
ReductionArtifact reduce(ReductionKind kind, const ProblemInstance& source);

// Gadget vertex names.
std::string gadget_arc_vertex(const std::string& role, const std::string& tail,
                              const std::string& head);
std::string gadget_path_vertex(const std::string& tail, const std::string& head,
                               std::size_t i);
std::string gadget_parent_vertex(const std::string& vertex, std::size_t i);

// Map a source solution into the target and a target solution back. The
// target objective of a forward-mapped solution equals the source objective.
// Backward mapping throws DomainError for target solutions outside the image
// the construction expects (DMRS arcs off the D1 copy, 2MNAS moves on D2).
Solution forward_solution(const ReductionArtifact& a, const Solution& s);
Solution backward_solution(const ReductionArtifact& a, const Solution& s);

// Number of fresh vertices and arcs the construction must add.
struct GadgetCounts {
  std::size_t fresh_vertices = 0;
  std::size_t fresh_arcs = 0;
  std::vector<std::size_t> target_arcs;  // per target digraph

  friend bool operator==(const GadgetCounts&, const GadgetCounts&) = default;
};
GadgetCounts expected_counts(const ReductionArtifact& a);
GadgetCounts observed_counts(const ReductionArtifact& a);

struct ReductionReport {
  ReductionKind kind = ReductionKind::kMrsToDmrs;
  bool construction_matches = false;  // target equals a fresh rebuild
  bool counts_match = false;
  bool target_valid = false;
  std::size_t source_optimum = 0;
  std::size_t target_optimum = 0;
  bool optimum_correspondence = false;
  bool forward_feasible = false;     // optimal source solution mapped forward
  bool backward_feasible = false;    // optimal target solution mapped back
  bool backward_optimal = false;
  bool round_trip = false;
  bool target_shape = false;  // target optimum stays inside the expected image
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

ReductionReport verify_reduction(const ReductionArtifact& a, const Caps& caps = {});

struct ExclusiveCycle {
  Arc arc;
  std::optional<Cycle> cycle;  // a cycle meeting the solution only in `arc`
};

struct ExclusiveCycleReport {
  bool feasible = false;  // the flips make the digraph acyclic
  std::vector<ExclusiveCycle> witnesses;

  bool passed() const;
};

// For each solution arc, the first simple cycle (in canonical order) whose
// intersection with the solution is exactly that arc.
ExclusiveCycleReport verify_exclusive_cycles(const Digraph& d, const ArcSetSolution& solution,
                           const Caps& caps = {});

}  // namespace bnfuse
