#include "bnfuse/reductions.hpp"

#include <algorithm>
#include <set>

#include "bnfuse/errors.hpp"

namespace bnfuse {

const char* reduction_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::kMrsToDmrs:
      return "mrs-to-dmrs";
    case ReductionKind::kDmrsTo2Dmrs:
      return "dmrs-to-2dmrs";
    case ReductionKind::kMrsToMnas:
      return "mrs-to-mnas";
    case ReductionKind::kMnasTo2Mnas:
      return "mnas-to-2mnas";
  }
  return "unknown";
}

ReductionKind parse_reduction(const std::string& name) {
  for (ReductionKind k : {ReductionKind::kMrsToDmrs, ReductionKind::kDmrsTo2Dmrs,
                          ReductionKind::kMrsToMnas, ReductionKind::kMnasTo2Mnas}) {
    if (name == reduction_name(k)) return k;
  }
  throw ParseError("unknown reduction '" + name + "'");
}

ProblemKind reduction_source(ReductionKind k) {
  switch (k) {
    case ReductionKind::kMrsToDmrs:
    case ReductionKind::kMrsToMnas:
      return ProblemKind::kMrs;
    case ReductionKind::kDmrsTo2Dmrs:
      return ProblemKind::kDmrs;
    case ReductionKind::kMnasTo2Mnas:
      return ProblemKind::kMnas;
  }
  return ProblemKind::kMrs;
}

ProblemKind reduction_target(ReductionKind k) {
  switch (k) {
    case ReductionKind::kMrsToDmrs:
      return ProblemKind::kDmrs;
    case ReductionKind::kDmrsTo2Dmrs:
      return ProblemKind::k2Dmrs;
    case ReductionKind::kMrsToMnas:
      return ProblemKind::kMnas;
    case ReductionKind::kMnasTo2Mnas:
      return ProblemKind::k2Mnas;
  }
  return ProblemKind::kDmrs;
}

std::string gadget_arc_vertex(const std::string& role, const std::string& tail,
                              const std::string& head) {
  return role + "_(" + tail + "," + head + ")";
}

std::string gadget_path_vertex(const std::string& tail, const std::string& head,
                               std::size_t i) {
  return "m_(" + tail + "," + head + ")_" + std::to_string(i);
}

std::string gadget_parent_vertex(const std::string& vertex, std::size_t i) {
  return "s_" + vertex + "_" + std::to_string(i);
}

namespace {

using NamedArcs = std::vector<std::pair<std::string, std::string>>;

struct Builder {
  std::vector<std::string> vertices;
  std::map<std::string, Provenance> provenance;

  explicit Builder(const Digraph& source) {
    for (const std::string& v : source.vertices()) add(v, {"source", {v}, 0});
  }

  void add(const std::string& name, Provenance p) {
    if (!provenance.emplace(name, std::move(p)).second) {
      throw DomainError("gadget vertex '" + name + "' collides with an existing vertex");
    }
    vertices.push_back(name);
  }

  Digraph digraph(const NamedArcs& arcs) const { return Digraph(vertices, arcs); }
};

NamedArcs named_arcs(const Digraph& d) {
  NamedArcs out;
  for (const Arc& a : d.arcs()) out.push_back(d.arc_names(a));
  return out;
}

}  // namespace

ReductionArtifact reduce_mrs_to_dmrs(const Digraph& d) {
  Builder b(d);
  NamedArcs e1, e2;
  for (const Arc& a : d.arcs()) {
    const auto [t, h] = d.arc_names(a);
    const std::string u = gadget_arc_vertex("u", t, h);
    const std::string v = gadget_arc_vertex("v", t, h);
    b.add(u, {"u", {t, h}, 0});
    b.add(v, {"v", {t, h}, 0});
    e1.push_back({u, v});
    e2.push_back({t, u});
    e2.push_back({v, h});
  }
  return {ReductionKind::kMrsToDmrs,
          {ProblemKind::kMrs, {d}},
          {ProblemKind::kDmrs, {b.digraph(e1), b.digraph(e2)}},
          std::move(b.provenance)};
}

ReductionArtifact reduce_dmrs_to_2dmrs(const Digraph& d1, const Digraph& d2) {
  ProblemInstance source{ProblemKind::kDmrs, {d1, d2}};
  source.validate();
  if (!is_acyclic(d2)) throw DomainError("reduction source needs an acyclic D2");
  const std::size_t copies = d1.vertex_count() * d1.vertex_count();
  Builder b(d1);
  NamedArcs e2;
  for (const Arc& a : d2.arcs()) {
    const auto [t, h] = d2.arc_names(a);
    for (std::size_t i = 1; i <= copies; ++i) {
      const std::string m = gadget_path_vertex(t, h, i);
      b.add(m, {"path", {t, h}, i});
      e2.push_back({t, m});
      e2.push_back({m, h});
    }
  }
  return {ReductionKind::kDmrsTo2Dmrs,
          std::move(source),
          {ProblemKind::k2Dmrs, {b.digraph(named_arcs(d1)), b.digraph(e2)}},
          std::move(b.provenance)};
}

ReductionArtifact reduce_mrs_to_mnas(const Digraph& d) {
  Builder b(d);
  NamedArcs e1, e2;
  for (const Arc& a : d.arcs()) {
    const auto [t, h] = d.arc_names(a);
    const std::string u = gadget_arc_vertex("u", t, h);
    const std::string v = gadget_arc_vertex("v", t, h);
    const std::string w = gadget_arc_vertex("w", t, h);
    b.add(u, {"u", {t, h}, 0});
    b.add(v, {"v", {t, h}, 0});
    b.add(w, {"w", {t, h}, 0});
    e1.push_back({u, v});
    e1.push_back({w, v});
    e2.push_back({t, u});
    e2.push_back({v, h});
  }
  return {ReductionKind::kMrsToMnas,
          {ProblemKind::kMrs, {d}},
          {ProblemKind::kMnas, {b.digraph(e1), b.digraph(e2)}},
          std::move(b.provenance)};
}

ReductionArtifact reduce_mnas_to_2mnas(const Digraph& d1, const Digraph& d2) {
  ProblemInstance source{ProblemKind::kMnas, {d1, d2}};
  source.validate();
  const std::size_t copies = d1.vertex_count() * d1.vertex_count();
  Builder b(d1);
  NamedArcs e2 = named_arcs(d2);
  for (const std::string& v : d1.vertices()) {
    for (std::size_t i = 1; i <= copies; ++i) {
      const std::string s = gadget_parent_vertex(v, i);
      b.add(s, {"parent", {v}, i});
      e2.push_back({s, v});
    }
  }
  return {ReductionKind::kMnasTo2Mnas,
          std::move(source),
          {ProblemKind::k2Mnas, {b.digraph(named_arcs(d1)), b.digraph(e2)}},
          std::move(b.provenance)};
}

ReductionArtifact reduce(ReductionKind kind, const ProblemInstance& source) {
  if (source.kind != reduction_source(kind)) {
    throw DomainError(std::string(reduction_name(kind)) + " needs a " +
                      problem_name(reduction_source(kind)) + " instance");
  }
  source.validate();
  const auto& ds = source.digraphs;
  switch (kind) {
    case ReductionKind::kMrsToDmrs:
      return reduce_mrs_to_dmrs(ds[0]);
    case ReductionKind::kDmrsTo2Dmrs:
      return reduce_dmrs_to_2dmrs(ds[0], ds[1]);
    case ReductionKind::kMrsToMnas:
      return reduce_mrs_to_mnas(ds[0]);
    case ReductionKind::kMnasTo2Mnas:
      return reduce_mnas_to_2mnas(ds[0], ds[1]);
  }
  throw std::logic_error("unhandled reduction kind");
}

// ---------------------------------------------------------------------------

namespace {

ArcSetSolution arc_solution(const ProblemInstance& instance, ArcSet arcs) {
  auto certificate = apply_arc_set(instance, arcs);
  if (!certificate) throw DomainError("solution arcs are not drawn from the instance");
  const std::size_t n = arcs.size();
  return {std::move(arcs), n, std::move(*certificate)};
}

const ArcSetSolution& as_arcs(const Solution& s) {
  if (const auto* a = std::get_if<ArcSetSolution>(&s)) return *a;
  throw DomainError("expected an arc-set solution");
}

const SequenceSolution& as_sequence(const Solution& s) {
  if (const auto* a = std::get_if<SequenceSolution>(&s)) return *a;
  throw DomainError("expected a reversal-sequence solution");
}

// Digraph whose indexing the problem's arc sets use.
Digraph arc_frame(const ProblemInstance& instance) {
  return instance.kind == ProblemKind::k2Dmrs ? union_digraph(instance.digraphs)
                                              : instance.digraphs[0];
}

const Provenance& provenance_of(const ReductionArtifact& a, const std::string& name) {
  auto it = a.provenance.find(name);
  if (it == a.provenance.end()) throw DomainError("vertex '" + name + "' has no provenance");
  return it->second;
}

}  // namespace

Solution forward_solution(const ReductionArtifact& a, const Solution& s) {
  const Digraph& src = a.source.digraphs[0];
  const Digraph& tgt = a.target.digraphs[0];
  switch (a.kind) {
    case ReductionKind::kMrsToDmrs: {
      ArcSet arcs;
      for (const Arc& e : as_arcs(s).arcs) {
        const auto [t, h] = src.arc_names(e);
        arcs.insert({tgt.index(gadget_arc_vertex("u", t, h)),
                     tgt.index(gadget_arc_vertex("v", t, h))});
      }
      return arc_solution(a.target, std::move(arcs));
    }
    case ReductionKind::kDmrsTo2Dmrs: {
      const Digraph frame = arc_frame(a.target);
      ArcSet arcs;
      for (const Arc& e : as_arcs(s).arcs) arcs.insert(translate_arc(src, frame, e));
      return arc_solution(a.target, std::move(arcs));
    }
    case ReductionKind::kMrsToMnas: {
      std::vector<Move> moves;
      for (const Arc& e : as_arcs(s).arcs) {
        const auto [t, h] = src.arc_names(e);
        moves.push_back({0, {{tgt.index(gadget_arc_vertex("u", t, h)),
                              tgt.index(gadget_arc_vertex("v", t, h))},
                             {}}});
      }
      return replay_sequence(a.target, moves);
    }
    case ReductionKind::kMnasTo2Mnas: {
      std::vector<Move> moves;
      for (const Move& m : as_sequence(s).steps) {
        if (m.graph != 0) throw DomainError("MNAS moves act on D1 only");
        moves.push_back({0, {translate_arc(src, tgt, m.step.arc), {}}});
      }
      return replay_sequence(a.target, moves);
    }
  }
  throw std::logic_error("unhandled reduction kind");
}

Solution backward_solution(const ReductionArtifact& a, const Solution& s) {
  const Digraph& src = a.source.digraphs[0];
  switch (a.kind) {
    case ReductionKind::kMrsToDmrs: {
      const Digraph& tgt = a.target.digraphs[0];
      ArcSet arcs;
      for (const Arc& e : as_arcs(s).arcs) {
        const Provenance& p = provenance_of(a, tgt.name(e.tail));
        if (p.role != "u" || !tgt.has_arc(e)) {
          throw DomainError("flipped arc " + tgt.arc_label(e) + " is not a middle arc");
        }
        arcs.insert({src.index(p.origin[0]), src.index(p.origin[1])});
      }
      return arc_solution(a.source, std::move(arcs));
    }
    case ReductionKind::kDmrsTo2Dmrs: {
      const Digraph frame = arc_frame(a.target);
      ArcSet arcs;
      for (const Arc& e : as_arcs(s).arcs) {
        if (!a.target.digraphs[0].has_arc(e)) {
          throw DomainError("flipped arc " + frame.arc_label(e) + " lies outside D1");
        }
        arcs.insert(translate_arc(frame, src, e));
      }
      return arc_solution(a.source, std::move(arcs));
    }
    case ReductionKind::kMrsToMnas: {
      const SequenceSolution& seq = as_sequence(s);
      const Digraph& tgt = a.target.digraphs[0];
      ArcSet arcs;
      for (const Arc& e : seq.new_arcs.at(0)) {
        const Provenance& p = provenance_of(a, tgt.name(e.tail));
        const Provenance& q = provenance_of(a, tgt.name(e.head));
        std::set<std::string> roles{p.role, q.role};
        if (p.origin == q.origin && roles == std::set<std::string>{"u", "w"}) {
          arcs.insert({src.index(p.origin[0]), src.index(p.origin[1])});
        }
      }
      return arc_solution(a.source, std::move(arcs));
    }
    case ReductionKind::kMnasTo2Mnas: {
      const Digraph& tgt = a.target.digraphs[0];
      std::vector<Move> moves;
      for (const Move& m : as_sequence(s).steps) {
        if (m.graph != 0) throw DomainError("2MNAS solution reverses arcs of D2");
        moves.push_back({0, {translate_arc(tgt, src, m.step.arc), {}}});
      }
      return replay_sequence(a.source, moves);
    }
  }
  throw std::logic_error("unhandled reduction kind");
}

GadgetCounts expected_counts(const ReductionArtifact& a) {
  const Digraph& d1 = a.source.digraphs[0];
  const std::size_t n = d1.vertex_count();
  const std::size_t e = d1.arc_count();
  switch (a.kind) {
    case ReductionKind::kMrsToDmrs:
      return {2 * e, 3 * e, {e, 2 * e}};
    case ReductionKind::kDmrsTo2Dmrs: {
      const std::size_t e2 = a.source.digraphs[1].arc_count();
      return {n * n * e2, 2 * n * n * e2, {e, 2 * n * n * e2}};
    }
    case ReductionKind::kMrsToMnas:
      return {3 * e, 4 * e, {2 * e, 2 * e}};
    case ReductionKind::kMnasTo2Mnas: {
      const std::size_t e2 = a.source.digraphs[1].arc_count();
      return {n * n * n, n * n * n, {e, e2 + n * n * n}};
    }
  }
  return {};
}

GadgetCounts observed_counts(const ReductionArtifact& a) {
  GadgetCounts c;
  auto fresh = [&](const std::string& name) {
    auto it = a.provenance.find(name);
    return it == a.provenance.end() || it->second.role != "source";
  };
  const Digraph& t1 = a.target.digraphs.at(0);
  for (const std::string& v : t1.vertices()) c.fresh_vertices += fresh(v);
  for (const Digraph& g : a.target.digraphs) {
    c.target_arcs.push_back(g.arc_count());
    for (const Arc& arc : g.arcs()) {
      c.fresh_arcs += fresh(g.name(arc.tail)) || fresh(g.name(arc.head));
    }
  }
  return c;
}

namespace {

bool feasible_in(const ProblemInstance& instance, const Solution& s) {
  if (const auto* a = std::get_if<ArcSetSolution>(&s)) {
    return arc_set_feasible(instance, a->arcs);
  }
  return sequence_verified(instance, std::get<SequenceSolution>(s));
}

bool same_solution(const Solution& a, const Solution& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<ArcSetSolution>(&a)) {
    return x->arcs == std::get<ArcSetSolution>(b).arcs;
  }
  return std::get<SequenceSolution>(a).steps == std::get<SequenceSolution>(b).steps;
}

}  // namespace

ReductionReport verify_reduction(const ReductionArtifact& a, const Caps& caps) {
  ReductionReport r;
  r.kind = a.kind;
  auto fail = [&](const std::string& what) { r.failures.push_back(what); };

  try {
    ReductionArtifact rebuilt = reduce(a.kind, a.source);
    r.construction_matches = rebuilt.target.kind == a.target.kind &&
                             rebuilt.target.digraphs == a.target.digraphs &&
                             rebuilt.provenance == a.provenance;
  } catch (const DomainError& e) {
    fail(std::string("source instance rejected: ") + e.what());
  }
  if (!r.construction_matches) fail("target differs from the construction applied to the source");

  const GadgetCounts expected = expected_counts(a);
  const GadgetCounts observed = observed_counts(a);
  r.counts_match = expected == observed;
  if (!r.counts_match) {
    fail("gadget counts: expected " + std::to_string(expected.fresh_vertices) + " vertices/" +
         std::to_string(expected.fresh_arcs) + " arcs, found " +
         std::to_string(observed.fresh_vertices) + "/" + std::to_string(observed.fresh_arcs));
  }

  try {
    a.target.validate();
    r.target_valid = a.target.kind == reduction_target(a.kind);
    std::set<std::string> names(a.target.digraphs[0].vertices().begin(),
                                a.target.digraphs[0].vertices().end());
    std::set<std::string> keyed;
    for (const auto& [name, p] : a.provenance) keyed.insert(name);
    if (names != keyed) r.target_valid = false;
  } catch (const DomainError&) {
    r.target_valid = false;
  }
  if (!r.target_valid) {
    fail("target is not a valid instance with total provenance");
    return r;
  }

  const Solution source_solution = solve_exact(a.source, caps);
  const Solution target_solution = solve_exact(a.target, caps);
  r.source_optimum = objective_of(source_solution);
  r.target_optimum = objective_of(target_solution);
  r.optimum_correspondence = r.source_optimum == r.target_optimum;
  if (!r.optimum_correspondence) {
    fail("optima differ: source " + std::to_string(r.source_optimum) + ", target " +
         std::to_string(r.target_optimum));
  }

  try {
    const Solution forward = forward_solution(a, source_solution);
    r.forward_feasible = feasible_in(a.target, forward) &&
                         objective_of(forward) == r.source_optimum;
    const Solution back = backward_solution(a, forward);
    r.round_trip = same_solution(back, source_solution);
  } catch (const Error& e) {
    fail(std::string("forward mapping failed: ") + e.what());
  }
  if (!r.forward_feasible) fail("forward-mapped source optimum is not feasible at equal cost");
  if (!r.round_trip) fail("backward(forward(s)) differs from s");

  try {
    const Solution back = backward_solution(a, target_solution);
    r.target_shape = true;
    r.backward_feasible = feasible_in(a.source, back);
    r.backward_optimal = r.backward_feasible && objective_of(back) == r.source_optimum;
  } catch (const Error& e) {
    fail(std::string("target optimum outside the expected image: ") + e.what());
  }
  if (r.target_shape && !r.backward_feasible) {
    fail("backward-mapped target optimum is infeasible in the source");
  }
  if (r.backward_feasible && !r.backward_optimal) {
    fail("backward-mapped target optimum is not optimal in the source");
  }
  return r;
}

bool ExclusiveCycleReport::passed() const {
  return feasible && std::all_of(witnesses.begin(), witnesses.end(),
                                 [](const ExclusiveCycle& w) { return w.cycle.has_value(); });
}

ExclusiveCycleReport verify_exclusive_cycles(const Digraph& d, const ArcSetSolution& solution,
                           const Caps& caps) {
  ExclusiveCycleReport r;
  const std::vector<Arc> arcs(solution.arcs.begin(), solution.arcs.end());
  r.feasible = std::all_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return d.has_arc(a); }) &&
               is_acyclic(flip_arcs(d, arcs));
  const std::vector<Cycle> cycles = enumerate_simple_cycles(d, caps);
  for (const Arc& a : arcs) {
    ExclusiveCycle w{a, std::nullopt};
    for (const Cycle& c : cycles) {
      if (!c.contains(a)) continue;
      const bool exclusive = std::none_of(arcs.begin(), arcs.end(), [&](const Arc& b) {
        return !(b == a) && c.contains(b);
      });
      if (exclusive) {
        w.cycle = c;
        break;
      }
    }
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

}  // namespace bnfuse
