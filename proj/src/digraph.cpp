#include "bnfuse/digraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

#include "bnfuse/errors.hpp"

namespace bnfuse {

Digraph::Digraph(std::vector<std::string> vertices) : names_(std::move(vertices)) {
  std::sort(names_.begin(), names_.end());
  if (std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
    throw DomainError("duplicate vertex identifier");
  }
  out_.resize(names_.size());
  in_.resize(names_.size());
}

Digraph::Digraph(std::vector<std::string> vertices,
                 const std::vector<std::pair<std::string, std::string>>& arcs)
    : Digraph(std::move(vertices)) {
  for (const auto& [u, v] : arcs) add_arc(u, v);
}

const std::string& Digraph::name(VertexId v) const {
  check_vertex(v);
  return names_[v];
}

std::optional<VertexId> Digraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

VertexId Digraph::index(std::string_view name) const {
  auto v = find(name);
  if (!v) throw DomainError("unknown vertex '" + std::string(name) + "'");
  return *v;
}

void Digraph::check_vertex(VertexId v) const {
  if (v >= names_.size()) throw DomainError("vertex index out of range");
}

bool Digraph::has_arc(Arc a) const {
  if (a.tail >= names_.size() || a.head >= names_.size()) return false;
  return out_[a.tail].count(a.head) != 0;
}

bool Digraph::has_arc(std::string_view tail, std::string_view head) const {
  auto u = find(tail);
  auto v = find(head);
  return u && v && has_arc(Arc{*u, *v});
}

void Digraph::add_arc(Arc a) {
  check_vertex(a.tail);
  check_vertex(a.head);
  if (a.tail == a.head) throw DomainError("self-loop on '" + names_[a.tail] + "'");
  if (out_[a.tail].insert(a.head).second) {
    in_[a.head].insert(a.tail);
    ++arc_count_;
  }
}

void Digraph::add_arc(std::string_view tail, std::string_view head) {
  add_arc(Arc{index(tail), index(head)});
}

void Digraph::remove_arc(Arc a) {
  if (!has_arc(a)) return;
  out_[a.tail].erase(a.head);
  in_[a.head].erase(a.tail);
  --arc_count_;
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> result;
  result.reserve(arc_count_);
  for (VertexId u = 0; u < out_.size(); ++u) {
    for (VertexId v : out_[u]) result.push_back({u, v});
  }
  return result;
}

ArcSet Digraph::arc_set() const {
  auto list = arcs();
  return ArcSet(list.begin(), list.end());
}

const std::set<VertexId>& Digraph::parents(VertexId v) const {
  check_vertex(v);
  return in_[v];
}

const std::set<VertexId>& Digraph::children(VertexId v) const {
  check_vertex(v);
  return out_[v];
}

std::string Digraph::arc_label(Arc a) const {
  return "(" + name(a.tail) + "," + name(a.head) + ")";
}

// ---------------------------------------------------------------------------

Ordering::Ordering(std::vector<VertexId> sequence) : sequence_(std::move(sequence)) {
  position_.assign(sequence_.size(), sequence_.size());
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    VertexId v = sequence_[i];
    if (v >= sequence_.size() || position_[v] != sequence_.size()) {
      throw DomainError("ordering is not a permutation of the vertex set");
    }
    position_[v] = i;
  }
}

Ordering Ordering::identity(std::size_t n) {
  std::vector<VertexId> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = i;
  return Ordering(std::move(seq));
}

Ordering Ordering::from_names(const Digraph& d,
                              const std::vector<std::string>& names) {
  if (names.size() != d.vertex_count()) {
    throw DomainError("ordering length differs from vertex count");
  }
  std::vector<VertexId> seq;
  seq.reserve(names.size());
  for (const auto& n : names) seq.push_back(d.index(n));
  return Ordering(std::move(seq));
}

VertexSet Ordering::predecessors(VertexId v) const {
  std::size_t p = position(v);
  return VertexSet(sequence_.begin(), sequence_.begin() + static_cast<long>(p));
}

std::vector<std::string> Ordering::names(const Digraph& d) const {
  std::vector<std::string> out;
  out.reserve(sequence_.size());
  for (VertexId v : sequence_) out.push_back(d.name(v));
  return out;
}

std::vector<VertexId> Cycle::vertices() const {
  std::vector<VertexId> out;
  out.reserve(arcs.size());
  for (const Arc& a : arcs) out.push_back(a.tail);
  return out;
}

bool Cycle::contains(Arc a) const {
  return std::find(arcs.begin(), arcs.end(), a) != arcs.end();
}

// ---------------------------------------------------------------------------

bool is_acyclic(const Digraph& d) {
  std::vector<std::size_t> indegree(d.vertex_count());
  std::vector<VertexId> stack;
  for (VertexId v = 0; v < d.vertex_count(); ++v) {
    indegree[v] = d.parents(v).size();
    if (indegree[v] == 0) stack.push_back(v);
  }
  std::size_t removed = 0;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    ++removed;
    for (VertexId w : d.children(v)) {
      if (--indegree[w] == 0) stack.push_back(w);
    }
  }
  return removed == d.vertex_count();
}

VertexSet parents(const Digraph& d, VertexId v) { return d.parents(v); }

VertexSet parents(const Digraph& d, std::string_view v) {
  return d.parents(d.index(v));
}

Digraph union_digraph(const std::vector<Digraph>& ds) {
  if (ds.empty()) return Digraph();
  Digraph result(ds.front().vertices());
  for (const Digraph& d : ds) {
    if (!d.same_vertices(result)) {
      throw DomainError("union of digraphs over different vertex sets");
    }
    for (const Arc& a : d.arcs()) result.add_arc(a);
  }
  return result;
}

bool consistent(const Ordering& alpha, const Digraph& d) {
  if (alpha.size() != d.vertex_count()) {
    throw DomainError("ordering length differs from vertex count");
  }
  for (const Arc& a : d.arcs()) {
    if (alpha.position(a.tail) > alpha.position(a.head)) return false;
  }
  return true;
}

Ordering topological_ordering(const Digraph& d) {
  std::vector<std::size_t> indegree(d.vertex_count());
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 0; v < d.vertex_count(); ++v) {
    indegree[v] = d.parents(v).size();
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<VertexId> seq;
  seq.reserve(d.vertex_count());
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    seq.push_back(v);
    for (VertexId w : d.children(v)) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (seq.size() != d.vertex_count()) {
    throw DomainError("topological ordering of a cyclic digraph");
  }
  return Ordering(std::move(seq));
}

namespace {

// Tarjan's algorithm restricted to vertices with allowed[v] set.
std::vector<std::vector<VertexId>> scc_restricted(const Digraph& d,
                                                  const std::vector<char>& allowed) {
  const std::size_t n = d.vertex_count();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> components;
  std::size_t counter = 0;

  std::function<void(VertexId)> strongconnect = [&](VertexId v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (VertexId w : d.children(v)) {
      if (!allowed[w]) continue;
      if (index[w] == kUnset) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<VertexId> comp;
      VertexId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  };

  for (VertexId v = 0; v < n; ++v) {
    if (allowed[v] && index[v] == kUnset) strongconnect(v);
  }
  std::sort(components.begin(), components.end());
  return components;
}

}  // namespace

std::vector<std::vector<VertexId>> strongly_connected_components(const Digraph& d) {
  return scc_restricted(d, std::vector<char>(d.vertex_count(), 1));
}

namespace detail {

// Johnson's algorithm. Cycles are produced rooted at their least vertex.
void cycle_search(const Digraph& d, std::size_t budget,
                  const std::function<bool(const std::vector<Arc>&)>& emit,
                  std::size_t& produced) {
  const std::size_t n = d.vertex_count();
  std::vector<char> allowed(n, 0), in_comp(n, 0), blocked(n, 0);
  std::vector<std::set<VertexId>> blocked_by(n);
  std::vector<VertexId> path;
  bool stop = false;

  std::function<void(VertexId)> unblock = [&](VertexId u) {
    blocked[u] = 0;
    auto waiting = std::move(blocked_by[u]);
    blocked_by[u].clear();
    for (VertexId w : waiting) {
      if (blocked[w]) unblock(w);
    }
  };

  VertexId root = 0;
  std::function<bool(VertexId)> circuit = [&](VertexId v) -> bool {
    bool found = false;
    path.push_back(v);
    blocked[v] = 1;
    for (VertexId w : d.children(v)) {
      if (stop) break;
      if (!in_comp[w]) continue;
      if (w == root) {
        std::vector<Arc> arcs;
        arcs.reserve(path.size());
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          arcs.push_back({path[i], path[i + 1]});
        }
        arcs.push_back({path.back(), root});
        ++produced;
        if (!emit(arcs) || produced >= budget) stop = true;
        found = true;
      } else if (!blocked[w]) {
        if (circuit(w)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (VertexId w : d.children(v)) {
        if (in_comp[w]) blocked_by[w].insert(v);
      }
    }
    path.pop_back();
    return found;
  };

  if (budget == 0) return;
  for (root = 0; root < n && !stop; ++root) {
    std::fill(allowed.begin(), allowed.end(), 0);
    for (VertexId v = root; v < n; ++v) allowed[v] = 1;
    std::vector<VertexId> comp;
    for (auto& c : scc_restricted(d, allowed)) {
      if (c.front() == root) {
        comp = std::move(c);
        break;
      }
    }
    if (comp.size() < 2) continue;
    std::fill(in_comp.begin(), in_comp.end(), 0);
    for (VertexId v : comp) {
      in_comp[v] = 1;
      blocked[v] = 0;
      blocked_by[v].clear();
    }
    circuit(root);
  }
}

}  // namespace detail

std::vector<Cycle> enumerate_simple_cycles(const Digraph& d, const Caps& caps) {
  if (d.vertex_count() > caps.cycle_vertices) {
    throw ScaleError("cycle enumeration over " + std::to_string(d.vertex_count()) +
                     " vertices exceeds cap " + std::to_string(caps.cycle_vertices));
  }
  std::vector<Cycle> cycles;
  visit_simple_cycles(d, static_cast<std::size_t>(-1), [&](Cycle c) {
    cycles.push_back(std::move(c));
    return true;
  });
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

bool has_path(const Digraph& d, VertexId from, VertexId to, std::optional<Arc> skip) {
  std::vector<char> seen(d.vertex_count(), 0);
  std::deque<VertexId> queue{from};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : d.children(v)) {
      if (skip && skip->tail == v && skip->head == w) continue;
      if (w == to) return true;
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return false;
}

std::optional<Cycle> find_cycle(const Digraph& d) {
  const std::size_t n = d.vertex_count();
  std::vector<char> color(n, 0);
  std::vector<VertexId> parent(n, 0);
  for (VertexId start = 0; start < n; ++start) {
    if (color[start]) continue;
    std::vector<std::pair<VertexId, std::set<VertexId>::const_iterator>> stack;
    color[start] = 1;
    stack.push_back({start, d.children(start).begin()});
    while (!stack.empty()) {
      auto& [v, it] = stack.back();
      if (it == d.children(v).end()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      VertexId w = *it++;
      if (color[w] == 1) {
        std::vector<VertexId> cyc{w};
        for (VertexId x = v; x != w; x = parent[x]) cyc.push_back(x);
        std::reverse(cyc.begin() + 1, cyc.end());
        auto least = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), least, cyc.end());
        Cycle c;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
          c.arcs.push_back({cyc[i], cyc[(i + 1) % cyc.size()]});
        }
        return c;
      }
      if (color[w] == 0) {
        color[w] = 1;
        parent[w] = v;
        stack.push_back({w, d.children(w).begin()});
      }
    }
  }
  return std::nullopt;
}

Digraph flip_arcs(const Digraph& d, const std::vector<Arc>& flip) {
  Digraph result = d;
  for (const Arc& a : flip) {
    if (!d.has_arc(a)) throw DomainError("flip of missing arc " + d.arc_label(a));
    result.remove_arc(a);
  }
  for (const Arc& a : flip) result.add_arc(a.reversed());
  return result;
}

Digraph remove_arcs(const Digraph& d, const std::vector<Arc>& drop) {
  Digraph result = d;
  for (const Arc& a : drop) result.remove_arc(a);
  return result;
}

Digraph induced_subgraph(const Digraph& d, const std::vector<VertexId>& keep) {
  std::vector<std::string> names;
  for (VertexId v : keep) names.push_back(d.name(v));
  Digraph result(names);
  for (VertexId u : keep) {
    for (VertexId v : d.children(u)) {
      if (std::find(keep.begin(), keep.end(), v) != keep.end()) {
        result.add_arc(d.name(u), d.name(v));
      }
    }
  }
  return result;
}

Arc translate_arc(const Digraph& from, const Digraph& to, Arc a) {
  return Arc{to.index(from.name(a.tail)), to.index(from.name(a.head))};
}

}  // namespace bnfuse
