#include "bnfuse/random.hpp"

#include <algorithm>

namespace bnfuse {

std::vector<std::string> vertex_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (n <= 26) {
      out.push_back(std::string(1, static_cast<char>('a' + i)));
    } else {
      std::string s = std::to_string(i);
      out.push_back("v" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s);
    }
  }
  return out;
}

namespace {

Digraph from_pairs(Rng& rng, std::size_t n, double p, std::size_t max_arcs,
                   const std::vector<Arc>& pairs) {
  std::bernoulli_distribution coin(p);
  std::vector<Arc> kept;
  for (const Arc& a : pairs) {
    if (coin(rng)) kept.push_back(a);
  }
  if (kept.size() > max_arcs) {
    std::shuffle(kept.begin(), kept.end(), rng);
    kept.resize(max_arcs);
  }
  Digraph d(vertex_names(n));
  for (const Arc& a : kept) d.add_arc(a);
  return d;
}

}  // namespace

Digraph random_digraph(Rng& rng, std::size_t n, double p, std::size_t max_arcs) {
  std::vector<Arc> pairs;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      if (u != v) pairs.push_back({u, v});
    }
  }
  return from_pairs(rng, n, p, max_arcs, pairs);
}

Ordering random_ordering(Rng& rng, std::size_t n) {
  std::vector<VertexId> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = i;
  std::shuffle(seq.begin(), seq.end(), rng);
  return Ordering(std::move(seq));
}

Digraph random_dag(Rng& rng, std::size_t n, double p, std::size_t max_arcs) {
  const Ordering hidden = random_ordering(rng, n);
  std::vector<Arc> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({hidden[i], hidden[j]});
  }
  return from_pairs(rng, n, p, max_arcs, pairs);
}

ProblemInstance random_reduction_source(Rng& rng, ReductionKind kind) {
  std::uniform_int_distribution<std::size_t> size(2, 4);
  const std::size_t n = size(rng);
  const ProblemKind source = reduction_source(kind);
  if (source == ProblemKind::kMrs) return {source, {random_digraph(rng, n, 0.4, 5)}};
  return {source, {random_dag(rng, n, 0.5, 5), random_dag(rng, n, 0.5, 5)}};
}

}  // namespace bnfuse
