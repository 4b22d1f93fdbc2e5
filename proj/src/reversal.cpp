#include "bnfuse/reversal.hpp"

#include <algorithm>
#include <limits>

#include "bnfuse/errors.hpp"

namespace bnfuse {

ArcSet new_arcs_between(const Digraph& original, const Digraph& now) {
  if (!original.same_vertices(now)) {
    throw DomainError("new-arc comparison over different vertex sets");
  }
  ArcSet out;
  for (const Arc& a : now.arcs()) {
    if (!original.has_arc(a) && !original.has_arc(a.reversed())) out.insert(a);
  }
  return out;
}

bool is_legal_reversal(const Digraph& d, Arc arc) {
  return d.has_arc(arc) && !has_path(d, arc.tail, arc.head, arc);
}

ReversalStep reverse_arc_in_place(Digraph& d, Arc arc) {
  const VertexId u = arc.tail;
  const VertexId v = arc.head;
  const VertexSet pu = d.parents(u);
  VertexSet pv = d.parents(v);
  pv.erase(u);

  ReversalStep step{arc, {}};
  d.remove_arc(arc);
  d.add_arc(arc.reversed());
  for (VertexId x : pu) {
    if (!pv.count(x) && !d.has_arc({x, v})) {
      d.add_arc({x, v});
      step.added_arcs.insert({x, v});
    }
  }
  for (VertexId x : pv) {
    if (!pu.count(x) && !d.has_arc({x, u})) {
      d.add_arc({x, u});
      step.added_arcs.insert({x, u});
    }
  }
  return step;
}

std::pair<Digraph, ReversalStep> reverse_arc(const Digraph& d, Arc arc) {
  if (!d.has_arc(arc)) {
    throw DomainError("cannot reverse missing arc");
  }
  if (!is_acyclic(d)) throw DomainError("arc reversal on a cyclic digraph");
  if (has_path(d, arc.tail, arc.head, arc)) {
    throw IllegalReversalError("reversing " + d.arc_label(arc) +
                               " would close a cycle: another directed path joins its ends");
  }
  Digraph result = d;
  ReversalStep step = reverse_arc_in_place(result, arc);
  return {std::move(result), std::move(step)};
}

namespace {

std::size_t count_added(const Digraph& d, Arc arc) {
  const VertexSet& pu = d.parents(arc.tail);
  const VertexSet& pv = d.parents(arc.head);
  std::size_t n = 0;
  for (VertexId x : pu) n += !pv.count(x);
  for (VertexId x : pv) n += (x != arc.tail && !pu.count(x));
  return n;
}

}  // namespace

ReorderResult reorder(const Digraph& d, const Ordering& alpha, ReorderPolicy policy) {
  if (alpha.size() != d.vertex_count()) {
    throw DomainError("ordering length differs from vertex count");
  }
  if (!is_acyclic(d)) throw DomainError("reorder of a cyclic digraph");

  ReorderResult result{d, {}, {}};
  Digraph& g = result.digraph;
  // Vertices are settled from the back of the ordering: once the latest
  // vertex with a violating out-arc has none left, no later step gives one
  // back to it or to anything after it.
  for (std::size_t pos = alpha.size(); pos-- > 0;) {
    const VertexId u = alpha[pos];
    for (;;) {
      std::vector<Arc> candidates;
      for (VertexId c : g.children(u)) {
        if (alpha.position(c) < pos && is_legal_reversal(g, {u, c})) {
          candidates.push_back({u, c});
        }
      }
      if (candidates.empty()) break;
      Arc pick = candidates.front();
      if (policy == ReorderPolicy::kFewestAdded) {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (const Arc& a : candidates) {
          std::size_t added = count_added(g, a);
          if (added < best) {
            best = added;
            pick = a;
          }
        }
      }
      result.steps.push_back(reverse_arc_in_place(g, pick));
    }
  }
  result.new_arcs = new_arcs_between(d, g);
  return result;
}

}  // namespace bnfuse
