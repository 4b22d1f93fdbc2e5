#include "bnfuse/independence.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "bnfuse/errors.hpp"

namespace bnfuse {

VertexMask to_mask(const VertexSet& s) {
  VertexMask m = 0;
  for (VertexId v : s) {
    if (v >= 64) throw DomainError("vertex index beyond mask width");
    m |= VertexMask{1} << v;
  }
  return m;
}

VertexSet to_set(VertexMask m) {
  VertexSet s;
  for (VertexId v : mask_members(m)) s.insert(v);
  return s;
}

std::vector<VertexId> mask_members(VertexMask m) {
  std::vector<VertexId> out;
  while (m) {
    out.push_back(static_cast<VertexId>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

bool mask_lex_less(VertexMask a, VertexMask b) {
  while (a && b) {
    int ia = std::countr_zero(a);
    int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

IStatement IStatement::make(VertexMask x, VertexMask z, VertexMask y) {
  if (mask_lex_less(y, x)) std::swap(x, y);
  return {x, z, y};
}

bool operator<(const IStatement& a, const IStatement& b) {
  if (a.x != b.x) return mask_lex_less(a.x, b.x);
  if (a.z != b.z) return mask_lex_less(a.z, b.z);
  if (a.y != b.y) return mask_lex_less(a.y, b.y);
  return false;
}

DependencyModel::DependencyModel(std::vector<std::string> universe)
    : universe_(std::move(universe)) {
  if (!std::is_sorted(universe_.begin(), universe_.end())) {
    std::sort(universe_.begin(), universe_.end());
  }
  if (universe_.size() > 64) throw DomainError("dependency model universe exceeds 64");
}

void DependencyModel::insert(IStatement s) {
  const VertexMask full =
      universe_.size() == 64 ? ~VertexMask{0} : (VertexMask{1} << universe_.size()) - 1;
  if (!s.x || !s.y) throw DomainError("independence statement with an empty side");
  if ((s.x & s.y) || (s.x & s.z) || (s.y & s.z)) {
    throw DomainError("independence statement over overlapping sets");
  }
  if ((s.x | s.y | s.z) & ~full) throw DomainError("statement outside the universe");
  statements_.insert(IStatement::make(s.x, s.z, s.y));
}

bool DependencyModel::contains(IStatement s) const {
  return statements_.count(IStatement::make(s.x, s.z, s.y)) != 0;
}

// ---------------------------------------------------------------------------

namespace {

bool separated_flags(const Digraph& d, const std::vector<char>& in_x,
                     const std::vector<char>& in_z, const std::vector<char>& in_y) {
  const std::size_t n = d.vertex_count();
  // Z together with its ancestors: colliders there are open.
  std::vector<char> opens(n, 0);
  std::deque<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    if (in_z[v]) {
      opens[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId p : d.parents(v)) {
      if (!opens[p]) {
        opens[p] = 1;
        queue.push_back(p);
      }
    }
  }

  // visited[2v] arrived from a child (travelling up), visited[2v+1] from a
  // parent (travelling down).
  std::vector<char> visited(2 * n, 0);
  std::deque<std::pair<VertexId, bool>> trail;
  for (VertexId v = 0; v < n; ++v) {
    if (in_x[v]) trail.push_back({v, true});
  }
  while (!trail.empty()) {
    auto [v, up] = trail.front();
    trail.pop_front();
    std::size_t slot = 2 * v + (up ? 0 : 1);
    if (visited[slot]) continue;
    visited[slot] = 1;
    if (!in_z[v] && in_y[v]) return false;
    if (up) {
      if (in_z[v]) continue;
      for (VertexId p : d.parents(v)) trail.push_back({p, true});
      for (VertexId c : d.children(v)) trail.push_back({c, false});
    } else {
      if (!in_z[v]) {
        for (VertexId c : d.children(v)) trail.push_back({c, false});
      }
      if (opens[v]) {
        for (VertexId p : d.parents(v)) trail.push_back({p, true});
      }
    }
  }
  return true;
}

void check_dsep_args(const Digraph& d, const std::vector<char>& x,
                     const std::vector<char>& z, const std::vector<char>& y) {
  bool any_x = false, any_y = false;
  for (std::size_t v = 0; v < d.vertex_count(); ++v) {
    if (x[v] + z[v] + y[v] > 1) throw DomainError("d-separation over overlapping sets");
    any_x = any_x || x[v];
    any_y = any_y || y[v];
  }
  if (!any_x || !any_y) throw DomainError("d-separation with an empty side");
}

std::vector<char> flags_of(const Digraph& d, const VertexSet& s) {
  std::vector<char> f(d.vertex_count(), 0);
  for (VertexId v : s) {
    if (v >= d.vertex_count()) throw DomainError("vertex index out of range");
    f[v] = 1;
  }
  return f;
}

std::vector<char> flags_of(const Digraph& d, VertexMask m) {
  if (d.vertex_count() < 64 && (m >> d.vertex_count())) {
    throw DomainError("vertex index out of range");
  }
  std::vector<char> f(d.vertex_count(), 0);
  for (VertexId v : mask_members(m)) f[v] = 1;
  return f;
}

bool d_separated_checked(const Digraph& d, const std::vector<char>& x,
                         const std::vector<char>& z, const std::vector<char>& y) {
  check_dsep_args(d, x, z, y);
  if (!is_acyclic(d)) throw DomainError("d-separation on a cyclic digraph");
  return separated_flags(d, x, z, y);
}

void check_universe(std::size_t n, const Caps& caps, const char* what) {
  constexpr std::size_t kHardLimit = 10;
  if (n > caps.closure_universe || n > kHardLimit) {
    throw ScaleError(std::string(what) + " over " + std::to_string(n) +
                     " variables exceeds cap " +
                     std::to_string(std::min(caps.closure_universe, kHardLimit)));
  }
}

// Ordered triples (X, Z, Y) as a dense bit table indexed by the three masks.
class TripleTable {
 public:
  explicit TripleTable(unsigned n)
      : n_(n), bits_((std::size_t{1} << (3 * n)) / 64 + 1, 0) {}

  bool test(VertexMask x, VertexMask z, VertexMask y) const {
    std::size_t i = key(x, z, y);
    return (bits_[i >> 6] >> (i & 63)) & 1;
  }
  bool set(VertexMask x, VertexMask z, VertexMask y) {
    std::size_t i = key(x, z, y);
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (bits_[i >> 6] & bit) return false;
    bits_[i >> 6] |= bit;
    return true;
  }

 private:
  std::size_t key(VertexMask x, VertexMask z, VertexMask y) const {
    return static_cast<std::size_t>(x | (z << n_) | (y << (2 * n_)));
  }
  unsigned n_;
  std::vector<std::uint64_t> bits_;
};

// Iterates the nonempty submasks of m.
template <class F>
void for_nonempty_submasks(VertexMask m, F&& f) {
  for (VertexMask s = m; s; s = (s - 1) & m) f(s);
}

}  // namespace

bool d_separated(const Digraph& d, const VertexSet& x, const VertexSet& z,
                 const VertexSet& y) {
  return d_separated_checked(d, flags_of(d, x), flags_of(d, z), flags_of(d, y));
}

bool d_separated(const Digraph& d, VertexMask x, VertexMask z, VertexMask y) {
  return d_separated_checked(d, flags_of(d, x), flags_of(d, z), flags_of(d, y));
}

DependencyModel dsep_model(const Digraph& d, const Caps& caps) {
  const std::size_t n = d.vertex_count();
  check_universe(n, caps, "d-separation model");
  if (!is_acyclic(d)) throw DomainError("d-separation model of a cyclic digraph");
  DependencyModel model(d.vertices());
  const VertexMask full = (VertexMask{1} << n) - 1;
  std::vector<char> fx(n), fz(n), fy(n);
  // Each vertex goes to X, Y, Z or nowhere: enumerate X and Y, then Z among
  // the rest.
  for_nonempty_submasks(full, [&](VertexMask x) {
    for_nonempty_submasks(full & ~x, [&](VertexMask y) {
      if (!mask_lex_less(x, y)) return;
      const VertexMask rest = full & ~(x | y);
      auto test = [&](VertexMask z) {
        for (std::size_t v = 0; v < n; ++v) {
          fx[v] = (x >> v) & 1;
          fy[v] = (y >> v) & 1;
          fz[v] = (z >> v) & 1;
        }
        if (separated_flags(d, fx, fz, fy)) model.insert({x, z, y});
      };
      test(0);
      for_nonempty_submasks(rest, test);
    });
  });
  return model;
}

DependencyModel graphoid_closure(const DependencyModel& seeds, bool intersectional,
                                 const Caps& caps) {
  const auto n = static_cast<unsigned>(seeds.universe_size());
  check_universe(n, caps, "graphoid closure");
  const VertexMask full = n == 0 ? 0 : (VertexMask{1} << n) - 1;
  TripleTable table(n);
  std::vector<IStatement> work;

  auto add = [&](VertexMask x, VertexMask z, VertexMask y) {
    if (table.set(x, z, y)) work.push_back({x, z, y});
    if (table.set(y, z, x)) work.push_back({y, z, x});
  };
  for (const IStatement& s : seeds.statements()) add(s.x, s.z, s.y);

  while (!work.empty()) {
    const IStatement s = work.back();
    work.pop_back();
    const VertexMask x = s.x, z = s.z, y = s.y;

    // Decomposition and weak union: I(X,Z,Y'uW) gives I(X, Z u W, Y').
    for_nonempty_submasks(y, [&](VertexMask kept) {
      const VertexMask moved = y & ~kept;
      add(x, z, kept);
      for_nonempty_submasks(moved, [&](VertexMask w) { add(x, z | w, kept); });
    });

    // Contraction, current statement as I(X,Z,Y).
    for_nonempty_submasks(full & ~(x | z | y), [&](VertexMask w) {
      if (table.test(x, z | y, w)) add(x, z, y | w);
    });

    // Contraction, current statement as I(X, Z u Y, W); and intersection,
    // current statement as I(X, Z u Y, W) paired with I(X, Z u W, Y).
    for_nonempty_submasks(z, [&](VertexMask part) {
      const VertexMask rest = z & ~part;
      if (table.test(x, rest, part)) add(x, rest, part | y);
      if (intersectional && table.test(x, rest | y, part)) add(x, rest, part | y);
    });
  }

  DependencyModel closure(seeds.universe());
  for_nonempty_submasks(full, [&](VertexMask x) {
    for_nonempty_submasks(full & ~x, [&](VertexMask y) {
      if (!mask_lex_less(x, y)) return;
      const VertexMask rest = full & ~(x | y);
      if (table.test(x, 0, y)) closure.insert({x, 0, y});
      for_nonempty_submasks(rest, [&](VertexMask zz) {
        if (table.test(x, zz, y)) closure.insert({x, zz, y});
      });
    });
  });
  return closure;
}

bool is_closed(const DependencyModel& m, bool intersectional) {
  Caps caps;
  caps.closure_universe = m.universe_size();
  return graphoid_closure(m, intersectional, caps) == m;
}

std::uint64_t count_ordered_istatements(unsigned n) {
  if (n < 1 || n > 31) throw DomainError("statement count defined for 1 <= n <= 31");
  std::uint64_t p4 = 1, p3 = 1, p2 = 1;
  for (unsigned i = 0; i < n; ++i) {
    p4 *= 4;
    p3 *= 3;
    p2 *= 2;
  }
  return p4 - 2 * p3 + p2;
}

std::uint64_t count_nontrivial_istatements(unsigned n) {
  return count_ordered_istatements(n) / 2;
}

namespace {
void check_same_universe(const DependencyModel& a, const DependencyModel& b) {
  if (a.universe() != b.universe()) {
    throw DomainError("dependency models over different universes");
  }
}
}  // namespace

bool is_imap(const DependencyModel& sub, const DependencyModel& m) {
  check_same_universe(sub, m);
  return std::includes(m.statements().begin(), m.statements().end(),
                       sub.statements().begin(), sub.statements().end());
}

bool is_perfect_map(const DependencyModel& a, const DependencyModel& b) {
  check_same_universe(a, b);
  return a.statements() == b.statements();
}

DependencyModel model_intersection(const std::vector<DependencyModel>& ms) {
  if (ms.empty()) throw DomainError("intersection of no models");
  DependencyModel result = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) {
    check_same_universe(result, ms[i]);
    DependencyModel next(result.universe());
    for (const IStatement& s : result.statements()) {
      if (ms[i].contains(s)) next.insert(s);
    }
    result = std::move(next);
  }
  return result;
}

DependencyModel model_union(const std::vector<DependencyModel>& ms) {
  if (ms.empty()) throw DomainError("union of no models");
  DependencyModel result = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) {
    check_same_universe(result, ms[i]);
    for (const IStatement& s : ms[i].statements()) result.insert(s);
  }
  return result;
}

}  // namespace bnfuse
