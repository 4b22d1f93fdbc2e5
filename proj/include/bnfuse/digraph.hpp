#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnfuse/config.hpp"

namespace bnfuse {

// Vertices are indexed by their rank in the sorted identifier list, so index
// order and identifier order coincide everywhere.
using VertexId = std::size_t;
using VertexSet = std::set<VertexId>;

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;

  Arc reversed() const { return {head, tail}; }
  auto operator<=>(const Arc&) const = default;
};

using ArcSet = std::set<Arc>;

// A finite set of named vertices and a set of ordered pairs between them.
// Antiparallel arcs may coexist; self-loops and duplicate arcs may not.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::vector<std::string> vertices);
  Digraph(std::vector<std::string> vertices,
          const std::vector<std::pair<std::string, std::string>>& arcs);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t arc_count() const { return arc_count_; }
  const std::vector<std::string>& vertices() const { return names_; }
  const std::string& name(VertexId v) const;
  std::optional<VertexId> find(std::string_view name) const;
  VertexId index(std::string_view name) const;

  bool has_arc(Arc a) const;
  bool has_arc(std::string_view tail, std::string_view head) const;
  void add_arc(Arc a);
  void add_arc(std::string_view tail, std::string_view head);
  void remove_arc(Arc a);

  // Arcs in lexicographic (tail, head) order.
  std::vector<Arc> arcs() const;
  ArcSet arc_set() const;
  const std::set<VertexId>& parents(VertexId v) const;
  const std::set<VertexId>& children(VertexId v) const;

  std::pair<std::string, std::string> arc_names(Arc a) const {
    return {name(a.tail), name(a.head)};
  }
  std::string arc_label(Arc a) const;

  bool same_vertices(const Digraph& other) const {
    return names_ == other.names_;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.names_ == b.names_ && a.out_ == b.out_;
  }

 private:
  void check_vertex(VertexId v) const;

  std::vector<std::string> names_;
  std::vector<std::set<VertexId>> out_;
  std::vector<std::set<VertexId>> in_;
  std::size_t arc_count_ = 0;
};

// A total order on the vertex set.
class Ordering {
 public:
  Ordering() = default;
  explicit Ordering(std::vector<VertexId> sequence);

  static Ordering identity(std::size_t n);
  static Ordering from_names(const Digraph& d,
                             const std::vector<std::string>& names);

  std::size_t size() const { return sequence_.size(); }
  const std::vector<VertexId>& sequence() const { return sequence_; }
  std::size_t position(VertexId v) const { return position_.at(v); }
  VertexId operator[](std::size_t i) const { return sequence_[i]; }

  // Vertices strictly before v.
  VertexSet predecessors(VertexId v) const;

  std::vector<std::string> names(const Digraph& d) const;

  auto operator<=>(const Ordering& other) const {
    return sequence_ <=> other.sequence_;
  }
  bool operator==(const Ordering& other) const {
    return sequence_ == other.sequence_;
  }

 private:
  std::vector<VertexId> sequence_;
  std::vector<std::size_t> position_;
};

// A directed simple cycle, rotated to start at its least vertex.
struct Cycle {
  std::vector<Arc> arcs;

  std::vector<VertexId> vertices() const;
  bool contains(Arc a) const;
  auto operator<=>(const Cycle&) const = default;
};

bool is_acyclic(const Digraph& d);
VertexSet parents(const Digraph& d, VertexId v);
VertexSet parents(const Digraph& d, std::string_view v);

// Directed simple cycles in canonical rotation, sorted.
std::vector<Cycle> enumerate_simple_cycles(const Digraph& d,
                                           const Caps& caps = {});

// Visits simple cycles (canonical rotation) until the visitor returns false
// or `budget` cycles have been produced. Returns the number visited. No
// vertex cap; callers bound the work through the budget.
template <class Visitor>
std::size_t visit_simple_cycles(const Digraph& d, std::size_t budget,
                                Visitor&& visit);

Digraph union_digraph(const std::vector<Digraph>& ds);
bool consistent(const Ordering& alpha, const Digraph& d);
Ordering topological_ordering(const Digraph& d);

// Strongly connected components; each sorted, listed by least member.
std::vector<std::vector<VertexId>> strongly_connected_components(
    const Digraph& d);

// Directed path from `from` to `to` (length >= 1), optionally ignoring one
// arc.
bool has_path(const Digraph& d, VertexId from, VertexId to,
              std::optional<Arc> skip = std::nullopt);
std::optional<Cycle> find_cycle(const Digraph& d);

// Same vertices, every arc in `flip` replaced by its reverse.
Digraph flip_arcs(const Digraph& d, const std::vector<Arc>& flip);
// Same vertices, arcs of `drop` removed.
Digraph remove_arcs(const Digraph& d, const std::vector<Arc>& drop);
// Subgraph induced by `keep`, reindexed.
Digraph induced_subgraph(const Digraph& d, const std::vector<VertexId>& keep);
// Re-express an arc of `from` in the indexing of `to` (matched by name).
Arc translate_arc(const Digraph& from, const Digraph& to, Arc a);

// ---------------------------------------------------------------------------

namespace detail {
void cycle_search(const Digraph& d, std::size_t budget,
                  const std::function<bool(const std::vector<Arc>&)>& emit,
                  std::size_t& produced);
}

template <class Visitor>
std::size_t visit_simple_cycles(const Digraph& d, std::size_t budget,
                                Visitor&& visit) {
  std::size_t produced = 0;
  detail::cycle_search(
      d, budget,
      [&](const std::vector<Arc>& arcs) { return visit(Cycle{arcs}); },
      produced);
  return produced;
}

}  // namespace bnfuse
