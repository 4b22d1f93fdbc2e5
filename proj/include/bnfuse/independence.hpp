#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bnfuse/config.hpp"
#include "bnfuse/digraph.hpp"

namespace bnfuse {

// Vertex subsets of a small universe, bit i standing for vertex i.
using VertexMask = std::uint64_t;

VertexMask to_mask(const VertexSet& s);
VertexSet to_set(VertexMask m);
std::vector<VertexId> mask_members(VertexMask m);
// Lexicographic comparison of the sorted member lists.
bool mask_lex_less(VertexMask a, VertexMask b);

// I(X, Z, Y): X independent of Y given Z. Stored with X <= Y so that the
// symmetric pair has a single representative.
struct IStatement {
  VertexMask x = 0;
  VertexMask z = 0;
  VertexMask y = 0;

  static IStatement make(VertexMask x, VertexMask z, VertexMask y);
  static IStatement make(const VertexSet& x, const VertexSet& z, const VertexSet& y) {
    return make(to_mask(x), to_mask(z), to_mask(y));
  }
  IStatement mirrored() const { return {y, z, x}; }

  friend bool operator==(const IStatement&, const IStatement&) = default;
  // Member-list order on (X, Z, Y).
  friend bool operator<(const IStatement& a, const IStatement& b);
};

class DependencyModel {
 public:
  DependencyModel() = default;
  explicit DependencyModel(std::vector<std::string> universe);

  const std::vector<std::string>& universe() const { return universe_; }
  std::size_t universe_size() const { return universe_.size(); }
  const std::set<IStatement>& statements() const { return statements_; }
  std::size_t size() const { return statements_.size(); }
  bool empty() const { return statements_.empty(); }

  // Canonicalizes before inserting; rejects overlapping or empty sides.
  void insert(IStatement s);
  bool contains(IStatement s) const;

  friend bool operator==(const DependencyModel&, const DependencyModel&) = default;

 private:
  std::vector<std::string> universe_;
  std::set<IStatement> statements_;
};

// d-separation of X from Y by Z in an acyclic digraph, decided in one
// reachability sweep over (vertex, direction) pairs.
bool d_separated(const Digraph& d, const VertexSet& x, const VertexSet& z,
                 const VertexSet& y);
bool d_separated(const Digraph& d, VertexMask x, VertexMask z, VertexMask y);

// Every canonical statement over the universe that d-separation verifies.
DependencyModel dsep_model(const Digraph& d, const Caps& caps = {});

// Least fixpoint of symmetry, decomposition, weak union, contraction and,
// when `intersectional`, intersection.
DependencyModel graphoid_closure(const DependencyModel& seeds, bool intersectional,
                                 const Caps& caps = {});

// Which of the five axioms apply to nothing outside the model.
bool is_closed(const DependencyModel& m, bool intersectional);

// (4^n - 2*3^n + 2^n) / 2 symmetric-deduplicated triples with X, Y nonempty,
// and twice that counting both orientations. n in [1, 31].
std::uint64_t count_nontrivial_istatements(unsigned n);
std::uint64_t count_ordered_istatements(unsigned n);

bool is_imap(const DependencyModel& sub, const DependencyModel& m);
bool is_perfect_map(const DependencyModel& a, const DependencyModel& b);
DependencyModel model_intersection(const std::vector<DependencyModel>& ms);
DependencyModel model_union(const std::vector<DependencyModel>& ms);

}  // namespace bnfuse
