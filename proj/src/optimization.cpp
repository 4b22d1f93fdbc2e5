#include "bnfuse/optimization.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "bnfuse/errors.hpp"

namespace bnfuse {

const char* problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::kMfas:
      return "mfas";
    case ProblemKind::kMrs:
      return "mrs";
    case ProblemKind::kDmrs:
      return "dmrs";
    case ProblemKind::k2Dmrs:
      return "2dmrs";
    case ProblemKind::kMnas:
      return "mnas";
    case ProblemKind::k2Mnas:
      return "2mnas";
  }
  return "unknown";
}

ProblemKind parse_problem(const std::string& name) {
  for (ProblemKind k : {ProblemKind::kMfas, ProblemKind::kMrs, ProblemKind::kDmrs,
                        ProblemKind::k2Dmrs, ProblemKind::kMnas, ProblemKind::k2Mnas}) {
    if (name == problem_name(k)) return k;
  }
  throw ParseError("unknown problem kind '" + name + "'");
}

std::size_t problem_arity(ProblemKind k) {
  return (k == ProblemKind::kMfas || k == ProblemKind::kMrs) ? 1 : 2;
}

bool is_sequence_problem(ProblemKind k) {
  return k == ProblemKind::kMnas || k == ProblemKind::k2Mnas;
}

void ProblemInstance::validate() const {
  if (digraphs.size() != problem_arity(kind)) {
    throw DomainError(std::string(problem_name(kind)) + " takes " +
                      std::to_string(problem_arity(kind)) + " digraph(s)");
  }
  if (digraphs.size() == 2) {
    if (!digraphs[0].same_vertices(digraphs[1])) {
      throw DomainError("instance digraphs have different vertex sets");
    }
    if (!is_acyclic(digraphs[0])) throw DomainError("D1 must be acyclic");
    if (kind != ProblemKind::kDmrs && !is_acyclic(digraphs[1])) {
      throw DomainError("D2 must be acyclic");
    }
  }
}

namespace {

using LocalArc = std::pair<std::uint32_t, std::uint32_t>;

bool acyclic_local(std::size_t n, const std::vector<LocalArc>& arcs) {
  std::vector<std::uint32_t> indegree(n, 0);
  std::vector<std::vector<std::uint32_t>> out(n);
  for (const auto& [u, v] : arcs) {
    out[u].push_back(v);
    ++indegree[v];
  }
  std::vector<std::uint32_t> stack;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!indegree[v]) stack.push_back(v);
  }
  std::size_t removed = 0;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    ++removed;
    for (std::uint32_t w : out[v]) {
      if (--indegree[w] == 0) stack.push_back(w);
    }
  }
  return removed == n;
}

// Smallest subset of `candidates`, lexicographically first among those, whose
// flip leaves `fixed` plus the candidates acyclic.
std::optional<std::vector<std::size_t>> first_min_flip(std::size_t n,
                                                       const std::vector<LocalArc>& fixed,
                                                       const std::vector<LocalArc>& candidates) {
  const std::size_t m = candidates.size();
  std::vector<LocalArc> arcs;
  std::vector<char> flipped(m, 0);
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      std::fill(flipped.begin(), flipped.end(), 0);
      for (std::size_t i : pick) flipped[i] = 1;
      arcs = fixed;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& [u, v] = candidates[i];
        arcs.push_back(flipped[i] ? LocalArc{v, u} : LocalArc{u, v});
      }
      if (acyclic_local(n, arcs)) return pick;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> local_index(const Digraph& d, const std::vector<VertexId>& comp) {
  std::vector<std::size_t> local(d.vertex_count(), kNone);
  for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
  return local;
}

// Per-component brute force. `flippable(a)` selects the candidate arcs.
template <class Flippable>
ArcSet brute_force_flips(const Digraph& g, const Caps& caps, Flippable&& flippable) {
  ArcSet chosen;
  for (const auto& comp : strongly_connected_components(g)) {
    if (comp.size() < 2) continue;
    const auto local = local_index(g, comp);
    std::vector<LocalArc> fixed, candidates;
    std::vector<Arc> candidate_arcs;
    for (VertexId u : comp) {
      for (VertexId v : g.children(u)) {
        if (local[v] == kNone) continue;
        LocalArc la{static_cast<std::uint32_t>(local[u]), static_cast<std::uint32_t>(local[v])};
        if (flippable(Arc{u, v})) {
          candidates.push_back(la);
          candidate_arcs.push_back({u, v});
        } else {
          fixed.push_back(la);
        }
      }
    }
    if (candidates.size() > caps.arc_subset) {
      throw ScaleError("subset enumeration over " + std::to_string(candidates.size()) +
                       " arcs exceeds cap " + std::to_string(caps.arc_subset));
    }
    auto pick = first_min_flip(comp.size(), fixed, candidates);
    if (!pick) throw InfeasibleError("no flip set makes the union acyclic");
    for (std::size_t i : *pick) chosen.insert(candidate_arcs[i]);
  }
  return chosen;
}

std::vector<Arc> as_vector(const ArcSet& s) { return {s.begin(), s.end()}; }

}  // namespace

namespace {

constexpr std::uint16_t kInfeasible = std::numeric_limits<std::uint16_t>::max();

// Fewest deletions among `del` arcs so that the `keep` arcs and surviving
// `del` arcs admit a common vertex ordering; kInfeasible if `keep` alone is
// cyclic. del[v] and keep[v] are out-neighbour masks within the component.
std::uint16_t ordering_dp(const std::vector<std::uint32_t>& del,
                          const std::vector<std::uint32_t>& keep,
                          std::vector<std::uint16_t>& best) {
  const std::size_t k = del.size();
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  best.assign(std::size_t{full} + 1, kInfeasible);
  best[0] = 0;
  // best[S]: fewest backward arcs when S fills the first |S| positions.
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint16_t value = kInfeasible;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const auto v = static_cast<std::uint32_t>(std::countr_zero(rest));
      const std::uint32_t prev = s & ~(std::uint32_t{1} << v);
      if (best[prev] == kInfeasible || (keep[v] & prev)) continue;
      value = std::min<std::uint16_t>(
          value, static_cast<std::uint16_t>(best[prev] + std::popcount(del[v] & prev)));
    }
    best[s] = value;
  }
  return best[full];
}

}  // namespace

ArcSetSolution solve_mfas_exact(const Digraph& d, const Caps& caps) {
  ArcSet removed;
  for (const auto& comp : strongly_connected_components(d)) {
    if (comp.size() < 2) continue;
    const std::size_t k = comp.size();
    if (k > caps.dp_vertices) {
      throw ScaleError("ordering DP over a " + std::to_string(k) +
                       "-vertex component exceeds cap " + std::to_string(caps.dp_vertices));
    }
    const auto local = local_index(d, comp);
    std::vector<std::pair<std::size_t, std::size_t>> arcs;  // sorted, local ids
    for (std::size_t i = 0; i < k; ++i) {
      for (VertexId w : d.children(comp[i])) {
        if (local[w] != kNone) arcs.push_back({i, local[w]});
      }
    }
    std::vector<std::uint32_t> del(k, 0), keep(k, 0);
    for (const auto& [u, w] : arcs) del[u] |= std::uint32_t{1} << w;
    std::vector<std::uint16_t> table;
    const std::size_t optimum = ordering_dp(del, keep, table);

    // Lexicographically least optimal set: walk the arcs in order, taking
    // each one whenever an optimal completion still exists.
    std::size_t taken = 0;
    for (const auto& [u, w] : arcs) {
      if (taken == optimum) break;
      const std::uint32_t bit = std::uint32_t{1} << w;
      del[u] &= ~bit;
      const std::uint16_t rest = ordering_dp(del, keep, table);
      if (rest != kInfeasible && taken + 1 + rest == optimum) {
        ++taken;
        removed.insert({comp[u], comp[w]});
      } else {
        keep[u] |= bit;
      }
    }
  }
  return {removed, removed.size(), remove_arcs(d, as_vector(removed))};
}

ArcSetSolution solve_mrs_exact(const Digraph& d, const Caps& caps) {
  ArcSet flips = brute_force_flips(d, caps, [](Arc) { return true; });
  return {flips, flips.size(), flip_arcs(d, as_vector(flips))};
}

ArcSetSolution solve_dmrs_exact(const Digraph& d1, const Digraph& d2, const Caps& caps) {
  ProblemInstance{ProblemKind::kDmrs, {d1, d2}}.validate();
  if (!is_acyclic(d2)) throw InfeasibleError("D2 is cyclic; no flip of D1 arcs helps");
  const Digraph g = union_digraph({d1, d2});
  // An arc shared with D2 keeps its D2 copy, so flipping it only adds a
  // 2-cycle.
  ArcSet flips = brute_force_flips(
      g, caps, [&](Arc a) { return d1.has_arc(a) && !d2.has_arc(a); });
  return {flips, flips.size(), union_digraph({flip_arcs(d1, as_vector(flips)), d2})};
}

ArcSetSolution solve_2dmrs_exact(const Digraph& d1, const Digraph& d2, const Caps& caps) {
  ProblemInstance{ProblemKind::k2Dmrs, {d1, d2}}.validate();
  const Digraph g = union_digraph({d1, d2});
  ArcSet flips = min_cycle_hitting_arcs(g, {}, caps);
  Digraph certificate = flip_arcs(g, as_vector(flips));
  if (!is_acyclic(certificate)) {
    throw std::logic_error("minimum cycle-hitting set failed as a flip set");
  }
  return {flips, flips.size(), std::move(certificate)};
}

namespace {

std::optional<std::vector<Arc>> shortest_cycle_through(const Digraph& g, Arc a) {
  // BFS from head back to tail.
  std::vector<VertexId> parent(g.vertex_count(), kNone);
  std::deque<VertexId> queue{a.head};
  parent[a.head] = a.head;
  while (!queue.empty() && parent[a.tail] == kNone) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : g.children(v)) {
      if (parent[w] == kNone) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent[a.tail] == kNone) return std::nullopt;
  std::vector<Arc> cycle{a};
  for (VertexId v = a.tail; v != a.head; v = parent[v]) cycle.push_back({parent[v], v});
  return cycle;
}

class HittingSetSearch {
 public:
  HittingSetSearch(std::size_t arcs, const Caps& caps) : caps_(caps), cycles_of_arc_(arcs),
        excluded_(arcs, 0) {}

  bool add_cycle(std::vector<std::size_t> ids) {
    std::sort(ids.begin(), ids.end());
    if (!seen_.insert(ids).second) return false;
    for (std::size_t a : ids) cycles_of_arc_[a].push_back(cycles_.size());
    cycles_.push_back(std::move(ids));
    hits_.push_back(0);
    return true;
  }

  // Minimum hitting set of the collected cycles, searching sizes from
  // `lower` upward.
  std::vector<std::size_t> solve(std::size_t lower) {
    for (std::size_t k = lower;; ++k) {
      pick_.clear();
      std::fill(hits_.begin(), hits_.end(), 0);
      if (dfs(k)) return pick_;
    }
  }

 private:
  bool dfs(std::size_t budget) {
    if (++nodes_ > caps_.search_frontier) {
      throw ScaleError("hitting-set search exceeded " +
                       std::to_string(caps_.search_frontier) + " nodes");
    }
    std::size_t target = kNone, target_size = kNone;
    for (std::size_t c = 0; c < cycles_.size(); ++c) {
      if (hits_[c]) continue;
      std::size_t open = 0;
      for (std::size_t a : cycles_[c]) open += !excluded_[a];
      if (open == 0) return false;
      if (open < target_size) {
        target = c;
        target_size = open;
      }
    }
    if (target == kNone) return true;
    if (budget == 0 || packing_bound() > budget) return false;

    std::vector<std::size_t> newly_excluded;
    bool found = false;
    for (std::size_t a : cycles_[target]) {
      if (excluded_[a]) continue;
      pick_.push_back(a);
      for (std::size_t c : cycles_of_arc_[a]) ++hits_[c];
      if (dfs(budget - 1)) {
        found = true;
        break;
      }
      for (std::size_t c : cycles_of_arc_[a]) --hits_[c];
      pick_.pop_back();
      excluded_[a] = 1;
      newly_excluded.push_back(a);
    }
    for (std::size_t a : newly_excluded) excluded_[a] = 0;
    return found;
  }

  // Unhit cycles with pairwise disjoint open arcs; each needs its own pick.
  std::size_t packing_bound() {
    std::vector<char> used(excluded_.size(), 0);
    std::size_t count = 0;
    for (std::size_t c = 0; c < cycles_.size(); ++c) {
      if (hits_[c]) continue;
      bool disjoint = true;
      for (std::size_t a : cycles_[c]) {
        if (!excluded_[a] && used[a]) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      for (std::size_t a : cycles_[c]) used[a] = 1;
      ++count;
    }
    return count;
  }

  const Caps& caps_;
  std::vector<std::vector<std::size_t>> cycles_;
  std::set<std::vector<std::size_t>> seen_;
  std::vector<std::vector<std::size_t>> cycles_of_arc_;
  std::vector<std::size_t> hits_;
  std::vector<char> excluded_;
  std::vector<std::size_t> pick_;
  std::size_t nodes_ = 0;
};

}  // namespace

ArcSet min_cycle_hitting_arcs(const Digraph& g, const ArcSet& fixed, const Caps& caps) {
  Digraph fixed_only(g.vertices());
  for (const Arc& a : fixed) {
    if (g.has_arc(a)) fixed_only.add_arc(a);
  }
  if (!is_acyclic(fixed_only)) throw InfeasibleError("a cycle uses only fixed arcs");

  std::vector<Arc> candidates;
  std::map<Arc, std::size_t> id;
  for (const Arc& a : g.arcs()) {
    if (!fixed.count(a)) {
      id[a] = candidates.size();
      candidates.push_back(a);
    }
  }

  HittingSetSearch search(candidates.size(), caps);
  std::vector<std::size_t> current;
  for (;;) {
    std::vector<Arc> drop;
    for (std::size_t i : current) drop.push_back(candidates[i]);
    const Digraph rest = remove_arcs(g, drop);
    std::vector<std::size_t> comp_of(g.vertex_count(), kNone);
    const auto comps = strongly_connected_components(rest);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (VertexId v : comps[c]) comp_of[v] = c;
    }
    bool cyclic = false;
    for (const Arc& a : candidates) {
      if (!rest.has_arc(a) || comp_of[a.tail] != comp_of[a.head]) continue;
      auto cycle = shortest_cycle_through(rest, a);
      if (!cycle) continue;
      cyclic = true;
      std::vector<std::size_t> ids;
      for (const Arc& c : *cycle) {
        auto it = id.find(c);
        if (it != id.end()) ids.push_back(it->second);
      }
      search.add_cycle(std::move(ids));
    }
    if (!cyclic) break;
    current = search.solve(current.size());
  }
  ArcSet out;
  for (std::size_t i : current) out.insert(candidates[i]);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using StateKey = std::vector<std::uint32_t>;

StateKey key_of(const std::vector<Digraph>& graphs) {
  StateKey key;
  for (const Digraph& g : graphs) {
    const auto n = static_cast<std::uint32_t>(g.vertex_count());
    for (const Arc& a : g.arcs()) {
      key.push_back(static_cast<std::uint32_t>(a.tail) * n + static_cast<std::uint32_t>(a.head));
    }
    key.push_back(std::numeric_limits<std::uint32_t>::max());
  }
  return key;
}

// Generated arcs the reversal of `arc` would create that count as new
// relative to `original`.
std::size_t new_arc_delta(const Digraph& g, const Digraph& original, Arc arc) {
  const VertexSet& pu = g.parents(arc.tail);
  const VertexSet& pv = g.parents(arc.head);
  auto fresh = [&](VertexId x, VertexId y) {
    return !original.has_arc({x, y}) && !original.has_arc({y, x});
  };
  std::size_t n = 0;
  for (VertexId x : pu) n += (!pv.count(x) && fresh(x, arc.head));
  for (VertexId x : pv) n += (x != arc.tail && !pu.count(x) && fresh(x, arc.tail));
  return n;
}

std::vector<std::size_t> movable_graphs(ProblemKind kind) {
  return kind == ProblemKind::k2Mnas ? std::vector<std::size_t>{0, 1}
                                     : std::vector<std::size_t>{0};
}

SequenceSolution best_first_sequence(const ProblemInstance& instance, const Caps& caps) {
  instance.validate();
  const auto& originals = instance.digraphs;
  const auto movable = movable_graphs(instance.kind);

  const std::size_t total_arcs = originals[0].arc_count() + originals[1].arc_count();
  const std::size_t length_cap = std::max<std::size_t>(1, total_arcs * originals[0].vertex_count());

  // Rearranging D1 to a topological ordering of D2 is always feasible.
  const std::size_t upper_bound =
      reorder(originals[0], topological_ordering(originals[1])).new_arcs.size();

  struct Node {
    std::vector<Digraph> graphs;
    std::size_t parent;
    Move move;
    std::size_t cost;
    std::size_t length;
  };
  std::vector<Node> nodes;
  std::map<StateKey, std::size_t> best_length;
  using Entry = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  nodes.push_back({originals, kNone, {}, 0, 0});
  best_length[key_of(originals)] = 0;
  open.push({0, 0, 0});
  std::set<StateKey> closed;
  bool truncated = false;

  while (!open.empty()) {
    const auto [cost, length, id] = open.top();
    open.pop();
    StateKey key = key_of(nodes[id].graphs);
    if (!closed.insert(key).second) continue;

    if (is_acyclic(union_digraph(nodes[id].graphs))) {
      std::vector<Move> moves;
      for (std::size_t at = id; nodes[at].parent != kNone; at = nodes[at].parent) {
        moves.push_back(nodes[at].move);
      }
      std::reverse(moves.begin(), moves.end());
      return replay_sequence(instance, moves);
    }
    if (length >= length_cap) {
      truncated = true;
      continue;
    }
    for (std::size_t gi : movable) {
      const Digraph& g = nodes[id].graphs[gi];
      for (const Arc& a : g.arcs()) {
        if (!is_legal_reversal(g, a)) continue;
        const std::size_t child_cost = cost + new_arc_delta(g, originals[gi], a);
        if (child_cost > upper_bound) continue;
        std::vector<Digraph> graphs = nodes[id].graphs;
        ReversalStep step = reverse_arc_in_place(graphs[gi], a);
        StateKey child_key = key_of(graphs);
        if (closed.count(child_key)) continue;
        auto it = best_length.find(child_key);
        if (it != best_length.end() && it->second <= length + 1) continue;
        best_length[child_key] = length + 1;
        if (nodes.size() >= caps.search_frontier) {
          throw ScaleError("reversal search exceeded " + std::to_string(caps.search_frontier) +
                           " states");
        }
        nodes.push_back({std::move(graphs), id, Move{gi, std::move(step)}, child_cost, length + 1});
        open.push({child_cost, length + 1, nodes.size() - 1});
      }
    }
  }
  if (truncated) {
    throw ScaleError("reversal search hit the sequence length cap of " +
                     std::to_string(length_cap));
  }
  throw std::logic_error("reversal search exhausted without reaching an acyclic union");
}

}  // namespace

SequenceSolution solve_mnas_exact(const Digraph& d1, const Digraph& d2, const Caps& caps) {
  return best_first_sequence({ProblemKind::kMnas, {d1, d2}}, caps);
}

SequenceSolution solve_2mnas_exact(const Digraph& d1, const Digraph& d2, const Caps& caps) {
  return best_first_sequence({ProblemKind::k2Mnas, {d1, d2}}, caps);
}

// ---------------------------------------------------------------------------

std::optional<Digraph> apply_arc_set(const ProblemInstance& instance, const ArcSet& arcs) {
  const auto& ds = instance.digraphs;
  const std::vector<Arc> list = as_vector(arcs);
  auto all_in = [&](const Digraph& g) {
    return std::all_of(list.begin(), list.end(), [&](const Arc& a) { return g.has_arc(a); });
  };
  switch (instance.kind) {
    case ProblemKind::kMfas:
      if (!all_in(ds[0])) return std::nullopt;
      return remove_arcs(ds[0], list);
    case ProblemKind::kMrs:
      if (!all_in(ds[0])) return std::nullopt;
      return flip_arcs(ds[0], list);
    case ProblemKind::kDmrs:
      if (!all_in(ds[0])) return std::nullopt;
      return union_digraph({flip_arcs(ds[0], list), ds[1]});
    case ProblemKind::k2Dmrs: {
      Digraph g = union_digraph({ds[0], ds[1]});
      if (!all_in(g)) return std::nullopt;
      return flip_arcs(g, list);
    }
    default:
      throw DomainError("arc-set semantics do not apply to sequence problems");
  }
}

bool arc_set_feasible(const ProblemInstance& instance, const ArcSet& arcs) {
  auto g = apply_arc_set(instance, arcs);
  return g && is_acyclic(*g);
}

ArcSetSolution greedy_arc_set(const ProblemInstance& instance, const Caps& caps) {
  instance.validate();
  const auto& ds = instance.digraphs;
  Digraph g;
  ArcSet fixed;
  switch (instance.kind) {
    case ProblemKind::kMfas:
    case ProblemKind::kMrs:
      g = ds[0];
      break;
    case ProblemKind::kDmrs:
      if (!is_acyclic(ds[1])) throw InfeasibleError("D2 is cyclic; no flip of D1 arcs helps");
      g = union_digraph({ds[0], ds[1]});
      for (const Arc& a : g.arcs()) {
        if (ds[1].has_arc(a)) fixed.insert(a);
      }
      break;
    case ProblemKind::k2Dmrs:
      g = union_digraph({ds[0], ds[1]});
      break;
    default:
      throw DomainError("greedy arc-set solver called on a sequence problem");
  }

  // Delete the arc on the most enumerated cycles until acyclic.
  Digraph rest = g;
  ArcSet deleted;
  while (!is_acyclic(rest)) {
    std::map<Arc, std::size_t> counts;
    visit_simple_cycles(rest, caps.cycle_budget, [&](const Cycle& c) {
      for (const Arc& a : c.arcs) {
        if (!fixed.count(a)) ++counts[a];
      }
      return true;
    });
    if (counts.empty()) throw InfeasibleError("a cycle uses only fixed arcs");
    auto pick = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > pick->second) pick = it;
    }
    deleted.insert(pick->first);
    rest.remove_arc(pick->first);
  }
  // Keep only deletions that point backward in an ordering of what is left;
  // their flips are then forward and the rest need nothing.
  const Ordering order = topological_ordering(rest);
  ArcSet arcs;
  for (const Arc& a : deleted) {
    if (order.position(a.tail) > order.position(a.head)) arcs.insert(a);
  }
  auto certificate = apply_arc_set(instance, arcs);
  if (!certificate || !is_acyclic(*certificate)) {
    throw std::logic_error("greedy arc set is not feasible");
  }
  return {arcs, arcs.size(), std::move(*certificate)};
}

SequenceSolution greedy_sequence(const ProblemInstance& instance, const Caps&) {
  instance.validate();
  const auto& originals = instance.digraphs;
  const auto movable = movable_graphs(instance.kind);
  const std::size_t total_arcs = originals[0].arc_count() + originals[1].arc_count();
  const std::size_t budget = std::max<std::size_t>(1, total_arcs * originals[0].vertex_count());

  std::vector<Digraph> graphs = originals;
  std::vector<Move> moves;
  std::set<StateKey> visited{key_of(graphs)};
  for (std::size_t step = 0; step < budget; ++step) {
    const Digraph u = union_digraph(graphs);
    if (is_acyclic(u)) break;
    std::vector<std::size_t> comp_of(u.vertex_count(), kNone);
    const auto comps = strongly_connected_components(u);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (VertexId v : comps[c]) comp_of[v] = c;
    }
    // Legal reversal on a union cycle with the fewest immediate additions,
    // never returning to a visited state.
    std::optional<std::pair<std::size_t, Arc>> pick;
    std::size_t pick_added = kNone;
    for (std::size_t gi : movable) {
      for (const Arc& a : graphs[gi].arcs()) {
        if (comp_of[a.tail] != comp_of[a.head] || !is_legal_reversal(graphs[gi], a)) continue;
        std::vector<Digraph> trial = graphs;
        ReversalStep s = reverse_arc_in_place(trial[gi], a);
        if (visited.count(key_of(trial))) continue;
        if (s.added_arcs.size() < pick_added) {
          pick_added = s.added_arcs.size();
          pick = std::make_pair(gi, a);
        }
      }
    }
    if (!pick) break;
    ReversalStep s = reverse_arc_in_place(graphs[pick->first], pick->second);
    moves.push_back({pick->first, std::move(s)});
    visited.insert(key_of(graphs));
  }
  if (!is_acyclic(union_digraph(graphs))) {
    // Fall back to rearranging D1 along an ordering of the current D2.
    ReorderResult r = reorder(graphs[0], topological_ordering(graphs[1]));
    for (ReversalStep& s : r.steps) moves.push_back({0, std::move(s)});
  }
  return replay_sequence(instance, moves);
}

Solution solve_exact(const ProblemInstance& instance, const Caps& caps) {
  instance.validate();
  const auto& ds = instance.digraphs;
  switch (instance.kind) {
    case ProblemKind::kMfas:
      return solve_mfas_exact(ds[0], caps);
    case ProblemKind::kMrs:
      return solve_mrs_exact(ds[0], caps);
    case ProblemKind::kDmrs:
      return solve_dmrs_exact(ds[0], ds[1], caps);
    case ProblemKind::k2Dmrs:
      return solve_2dmrs_exact(ds[0], ds[1], caps);
    case ProblemKind::kMnas:
      return solve_mnas_exact(ds[0], ds[1], caps);
    case ProblemKind::k2Mnas:
      return solve_2mnas_exact(ds[0], ds[1], caps);
  }
  throw std::logic_error("unhandled problem kind");
}

Solution solve_greedy(const ProblemInstance& instance, const Caps& caps) {
  if (is_sequence_problem(instance.kind)) return greedy_sequence(instance, caps);
  return greedy_arc_set(instance, caps);
}

std::size_t objective_of(const Solution& s) {
  return std::visit([](const auto& x) { return x.objective; }, s);
}

SequenceSolution replay_sequence(const ProblemInstance& instance,
                                 const std::vector<Move>& moves) {
  instance.validate();
  if (!is_sequence_problem(instance.kind)) {
    throw DomainError("reversal sequences apply to mnas and 2mnas only");
  }
  const auto movable = movable_graphs(instance.kind);
  SequenceSolution out;
  out.final_digraphs = instance.digraphs;
  for (const Move& m : moves) {
    if (std::find(movable.begin(), movable.end(), m.graph) == movable.end()) {
      throw DomainError("reversal on digraph " + std::to_string(m.graph + 1) +
                        ", which this problem keeps fixed");
    }
    auto [next, step] = reverse_arc(out.final_digraphs[m.graph], m.step.arc);
    out.final_digraphs[m.graph] = std::move(next);
    out.steps.push_back({m.graph, std::move(step)});
  }
  for (std::size_t gi : movable) {
    out.new_arcs.push_back(new_arcs_between(instance.digraphs[gi], out.final_digraphs[gi]));
    out.objective += out.new_arcs.back().size();
  }
  out.certificate = union_digraph(out.final_digraphs);
  return out;
}

bool sequence_verified(const ProblemInstance& instance, const SequenceSolution& s) {
  SequenceSolution replayed;
  try {
    std::vector<Move> moves = s.steps;
    replayed = replay_sequence(instance, moves);
  } catch (const Error&) {
    return false;
  }
  return replayed.steps == s.steps && replayed.new_arcs == s.new_arcs &&
         replayed.objective == s.objective && replayed.final_digraphs == s.final_digraphs &&
         replayed.certificate == s.certificate && is_acyclic(replayed.certificate);
}

}  // namespace bnfuse
