#include "bnfuse/fusion.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "bnfuse/errors.hpp"
#include "bnfuse/reversal.hpp"

namespace bnfuse {

DependencyModel RecursiveBasis::statements() const {
  DependencyModel model(universe);
  for (const BasisEntry& e : entries) {
    if (e.remainder.empty()) continue;
    model.insert({VertexMask{1} << e.vertex, to_mask(e.boundary), to_mask(e.remainder)});
  }
  return model;
}

namespace {

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

// Shrinks the predecessor set of each vertex to its minimal separator.
// The separators of v form a family closed upward (weak union) and under
// intersection, so dropping members one at a time reaches the least one.
template <class Separates>
RecursiveBasis shrink_basis(std::vector<std::string> universe, const Ordering& alpha,
                            Separates&& separates) {
  RecursiveBasis basis{std::move(universe), alpha, {}};
  for (std::size_t i = 1; i < alpha.size(); ++i) {
    const VertexId v = alpha[i];
    const VertexSet preds = alpha.predecessors(v);
    VertexSet boundary = preds;
    for (VertexId u : preds) {
      VertexSet candidate = boundary;
      candidate.erase(u);
      if (separates(v, candidate, set_difference(preds, candidate))) {
        boundary = std::move(candidate);
      }
    }
    basis.entries.push_back({v, boundary, set_difference(preds, boundary)});
  }
  return basis;
}

}  // namespace

RecursiveBasis recursive_basis(const Digraph& d, const Ordering& alpha) {
  if (alpha.size() != d.vertex_count()) {
    throw DomainError("ordering length differs from vertex count");
  }
  if (!is_acyclic(d)) throw DomainError("recursive basis of a cyclic digraph");
  if (consistent(alpha, d)) {
    RecursiveBasis basis{d.vertices(), alpha, {}};
    for (std::size_t i = 1; i < alpha.size(); ++i) {
      const VertexId v = alpha[i];
      const VertexSet preds = alpha.predecessors(v);
      VertexSet boundary = d.parents(v);
      basis.entries.push_back({v, boundary, set_difference(preds, boundary)});
    }
    return basis;
  }
  return shrink_basis(d.vertices(), alpha,
                      [&](VertexId v, const VertexSet& b, const VertexSet& r) {
                        return d_separated(d, VertexSet{v}, b, r);
                      });
}

RecursiveBasis recursive_basis_of_model(const DependencyModel& m, const Ordering& alpha) {
  if (alpha.size() != m.universe_size()) {
    throw DomainError("ordering length differs from universe size");
  }
  return shrink_basis(m.universe(), alpha,
                      [&](VertexId v, const VertexSet& b, const VertexSet& r) {
                        return m.contains({VertexMask{1} << v, to_mask(b), to_mask(r)});
                      });
}

Digraph dag_from_basis(const RecursiveBasis& basis) {
  Digraph d(basis.universe);
  for (const BasisEntry& e : basis.entries) {
    for (VertexId u : e.boundary) d.add_arc({u, e.vertex});
  }
  return d;
}

RecursiveBasis unified_recursive_basis(const std::vector<RecursiveBasis>& bases) {
  if (bases.empty()) throw DomainError("unified basis of no bases");
  RecursiveBasis unified = bases.front();
  for (std::size_t i = 1; i < bases.size(); ++i) {
    const RecursiveBasis& b = bases[i];
    if (b.universe != unified.universe || !(b.ordering == unified.ordering)) {
      throw DomainError("unified basis over different orderings or universes");
    }
    for (std::size_t j = 0; j < unified.entries.size(); ++j) {
      BasisEntry& e = unified.entries[j];
      const BasisEntry& other = b.entries[j];
      e.boundary.insert(other.boundary.begin(), other.boundary.end());
      VertexSet common;
      std::set_intersection(e.remainder.begin(), e.remainder.end(),
                            other.remainder.begin(), other.remainder.end(),
                            std::inserter(common, common.end()));
      e.remainder = std::move(common);
    }
  }
  return unified;
}

void ExpertSet::validate() const {
  if (dags.empty()) throw DomainError("expert set is empty");
  if (labels.size() != dags.size()) throw DomainError("expert labels do not match digraphs");
  for (const Digraph& d : dags) {
    if (!d.same_vertices(dags.front())) {
      throw DomainError("experts disagree on the vertex set");
    }
    if (!is_acyclic(d)) throw DomainError("expert digraph is cyclic");
  }
}

ExpertSubset all_experts(const ExpertSet& experts) {
  ExpertSubset s(experts.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  return s;
}

namespace {

void check_subset(const ExpertSet& experts, const ExpertSubset& subset) {
  if (subset.empty()) throw DomainError("empty expert subset");
  for (std::size_t i : subset) {
    if (i >= experts.size()) throw DomainError("expert index out of range");
  }
}

RecursiveBasis unified_for(const ExpertSet& experts, const ExpertSubset& subset,
                           const Ordering& alpha) {
  check_subset(experts, subset);
  std::vector<RecursiveBasis> bases;
  for (std::size_t i : subset) bases.push_back(recursive_basis(experts.dags[i], alpha));
  return unified_recursive_basis(bases);
}

}  // namespace

Digraph consensus_dag(const ExpertSet& experts, const ExpertSubset& subset,
                      const Ordering& alpha) {
  return dag_from_basis(unified_for(experts, subset, alpha));
}

std::vector<std::pair<ExpertSubset, Digraph>> consensus_all_subsets(
    const ExpertSet& experts, std::size_t k, const Ordering& alpha, const Caps& caps) {
  const std::size_t m = experts.size();
  if (k < 1 || k > m) throw DomainError("agreement threshold outside [1, m]");
  // C(m, k) without overflow for the sizes that pass the cap.
  std::size_t count = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    count = count * (m - k + i) / i;
    if (count > caps.subsets) {
      throw ScaleError("more than " + std::to_string(caps.subsets) + " expert subsets");
    }
  }
  std::vector<std::pair<ExpertSubset, Digraph>> out;
  ExpertSubset subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = i;
  for (;;) {
    out.emplace_back(subset, consensus_dag(experts, subset, alpha));
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return out;
}

std::size_t retained_independencies(const ExpertSet& experts, const ExpertSubset& subset,
                                    const Ordering& alpha, const Caps& caps) {
  RecursiveBasis unified = unified_for(experts, subset, alpha);
  return graphoid_closure(unified.statements(), true, caps).size();
}

std::size_t new_arcs_for(const ExpertSet& experts, const ExpertSubset& subset,
                         const Ordering& alpha) {
  check_subset(experts, subset);
  std::size_t total = 0;
  for (std::size_t i : subset) total += reorder(experts.dags[i], alpha).new_arcs.size();
  return total;
}

const char* objective_name(Objective o) {
  switch (o) {
    case Objective::kRetainedIndependencies:
      return "retained-independencies";
    case Objective::kMinNewArcs:
      return "min-new-arcs";
    case Objective::kMinUnionArcs:
      return "min-union-arcs";
  }
  return "unknown";
}

Objective parse_objective(const std::string& name) {
  for (Objective o : {Objective::kRetainedIndependencies, Objective::kMinNewArcs,
                      Objective::kMinUnionArcs}) {
    if (name == objective_name(o)) return o;
  }
  throw ParseError("unknown objective '" + name + "'");
}

std::int64_t objective_value(Objective o, const ExpertSet& experts,
                             const ExpertSubset& subset, const Ordering& alpha,
                             const Caps& caps) {
  switch (o) {
    case Objective::kRetainedIndependencies:
      return static_cast<std::int64_t>(retained_independencies(experts, subset, alpha, caps));
    case Objective::kMinNewArcs:
      return static_cast<std::int64_t>(new_arcs_for(experts, subset, alpha));
    case Objective::kMinUnionArcs:
      return static_cast<std::int64_t>(consensus_dag(experts, subset, alpha).arc_count());
  }
  return 0;
}

namespace {

// Calls f(ordering, score) for every permutation in lexicographic order.
template <class F>
void for_each_ordering(const ExpertSet& experts, const ExpertSubset& subset,
                       Objective objective, const Caps& caps, F&& f) {
  experts.validate();
  check_subset(experts, subset);
  const std::size_t n = experts.front().vertex_count();
  if (n > caps.ordering_factorial) {
    throw ScaleError("ordering search over " + std::to_string(n) +
                     " vertices exceeds cap " + std::to_string(caps.ordering_factorial));
  }
  if (objective == Objective::kRetainedIndependencies && n > caps.closure_universe) {
    throw ScaleError("retained-independencies objective over " + std::to_string(n) +
                     " vertices exceeds closure cap " +
                     std::to_string(caps.closure_universe));
  }
  std::vector<VertexId> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = i;
  do {
    Ordering alpha(seq);
    f(alpha, objective_value(objective, experts, subset, alpha, caps));
  } while (std::next_permutation(seq.begin(), seq.end()));
}

bool better(Objective o, std::int64_t a, std::int64_t b) {
  return o == Objective::kRetainedIndependencies ? a > b : a < b;
}

}  // namespace

OrderingScore search_ordering_exhaustive(const ExpertSet& experts,
                                         const ExpertSubset& subset, Objective objective,
                                         const Caps& caps) {
  std::optional<OrderingScore> best;
  for_each_ordering(experts, subset, objective, caps,
                    [&](const Ordering& alpha, std::int64_t score) {
                      if (!best || better(objective, score, best->score)) {
                        best = OrderingScore{alpha, score};
                      }
                    });
  return *best;
}

std::vector<Ordering> optimal_orderings(const ExpertSet& experts, const ExpertSubset& subset,
                                        Objective objective, const Caps& caps) {
  std::vector<std::pair<Ordering, std::int64_t>> scored;
  for_each_ordering(experts, subset, objective, caps,
                    [&](const Ordering& alpha, std::int64_t score) {
                      scored.emplace_back(alpha, score);
                    });
  std::int64_t best = scored.front().second;
  for (const auto& [alpha, score] : scored) {
    if (better(objective, score, best)) best = score;
  }
  std::vector<Ordering> out;
  for (auto& [alpha, score] : scored) {
    if (score == best) out.push_back(std::move(alpha));
  }
  return out;
}

Ordering search_ordering_greedy(const ExpertSet& experts, const ExpertSubset& subset) {
  experts.validate();
  check_subset(experts, subset);
  const std::size_t n = experts.front().vertex_count();
  std::vector<char> placed(n, 0);
  std::vector<VertexId> seq;
  seq.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    VertexId pick = 0;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (VertexId v = 0; v < n; ++v) {
      if (placed[v]) continue;
      std::size_t forced = 0;
      for (std::size_t i : subset) {
        for (VertexId p : experts.dags[i].parents(v)) forced += !placed[p];
      }
      if (forced < best) {
        best = forced;
        pick = v;
      }
    }
    placed[pick] = 1;
    seq.push_back(pick);
  }
  return Ordering(std::move(seq));
}

}  // namespace bnfuse
