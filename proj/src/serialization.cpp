#include "bnfuse/serialization.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bnfuse/errors.hpp"

namespace bnfuse {

namespace {

// nlohmann type and key errors surface as ParseError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  }
}

Json names_of(const Digraph& d, const VertexSet& s) {
  Json out = Json::array();
  for (VertexId v : s) out.push_back(d.name(v));
  return out;
}

Json names_of(const std::vector<std::string>& universe, VertexMask m) {
  Json out = Json::array();
  for (VertexId v : mask_members(m)) out.push_back(universe[v]);
  return out;
}

VertexMask mask_from(const std::vector<std::string>& universe, const Json& j) {
  VertexMask m = 0;
  for (const auto& name : j) {
    const auto s = name.get<std::string>();
    auto it = std::lower_bound(universe.begin(), universe.end(), s);
    if (it == universe.end() || *it != s) throw DomainError("unknown vertex '" + s + "'");
    m |= VertexMask{1} << static_cast<std::size_t>(it - universe.begin());
  }
  return m;
}

}  // namespace

Json to_json(const Digraph& d) {
  Json arcs = Json::array();
  for (const Arc& a : d.arcs()) arcs.push_back(arc_to_json(d, a));
  return {{"vertices", d.vertices()}, {"arcs", std::move(arcs)}};
}

Digraph digraph_from_json(const Json& j) {
  return guarded("digraph", [&] {
    Digraph d(j.at("vertices").get<std::vector<std::string>>());
    for (const auto& a : j.at("arcs")) {
      if (!a.is_array() || a.size() != 2) throw ParseError("arc must be a [tail, head] pair");
      d.add_arc(a[0].get<std::string>(), a[1].get<std::string>());
    }
    return d;
  });
}

Json arc_to_json(const Digraph& d, Arc a) { return Json::array({d.name(a.tail), d.name(a.head)}); }

Arc arc_from_json(const Digraph& d, const Json& j) {
  return guarded("arc", [&] {
    if (!j.is_array() || j.size() != 2) throw ParseError("arc must be a [tail, head] pair");
    return Arc{d.index(j[0].get<std::string>()), d.index(j[1].get<std::string>())};
  });
}

Json arcs_to_json(const Digraph& d, const ArcSet& arcs) {
  Json out = Json::array();
  for (const Arc& a : arcs) out.push_back(arc_to_json(d, a));
  return out;
}

Json ordering_to_json(const Digraph& d, const Ordering& alpha) { return alpha.names(d); }

Ordering ordering_from_json(const Digraph& d, const Json& j) {
  return guarded("ordering",
                 [&] { return Ordering::from_names(d, j.get<std::vector<std::string>>()); });
}

Json to_json(const DependencyModel& m) {
  Json out = Json::array();
  for (const IStatement& s : m.statements()) {
    out.push_back({{"X", names_of(m.universe(), s.x)},
                   {"Z", names_of(m.universe(), s.z)},
                   {"Y", names_of(m.universe(), s.y)}});
  }
  return out;
}

DependencyModel model_from_json(const std::vector<std::string>& universe, const Json& j) {
  return guarded("dependency model", [&] {
    DependencyModel m(universe);
    for (const auto& s : j) {
      m.insert(IStatement::make(mask_from(universe, s.at("X")), mask_from(universe, s.at("Z")),
                                mask_from(universe, s.at("Y"))));
    }
    return m;
  });
}

Json to_json(const RecursiveBasis& b) {
  const Digraph frame(b.universe);
  Json entries = Json::array();
  for (const BasisEntry& e : b.entries) {
    entries.push_back({{"vertex", b.universe[e.vertex]},
                       {"boundary", names_of(frame, e.boundary)},
                       {"remainder", names_of(frame, e.remainder)}});
  }
  return {{"ordering", b.ordering.names(frame)}, {"entries", std::move(entries)}};
}

Json to_json(const ExpertSet& e) {
  Json out = Json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    Json d = to_json(e.dags[i]);
    d["name"] = e.labels[i];
    out.push_back(std::move(d));
  }
  return out;
}

ExpertSet experts_from_json(const Json& j) {
  return guarded("expert file", [&] {
    if (!j.is_array()) throw ParseError("expert file must be a list of digraphs");
    ExpertSet e;
    for (const auto& d : j) {
      e.labels.push_back(d.at("name").get<std::string>());
      e.dags.push_back(digraph_from_json(d));
    }
    e.validate();
    return e;
  });
}

Json to_json(const ProblemInstance& p) {
  Json ds = Json::array();
  for (const Digraph& d : p.digraphs) ds.push_back(to_json(d));
  return {{"kind", problem_name(p.kind)}, {"digraphs", std::move(ds)}};
}

ProblemInstance instance_from_json(const Json& j) {
  return guarded("instance", [&] {
    ProblemInstance p;
    p.kind = parse_problem(j.at("kind").get<std::string>());
    for (const auto& d : j.at("digraphs")) p.digraphs.push_back(digraph_from_json(d));
    p.validate();
    return p;
  });
}

std::string digest(const Digraph& d) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : to_json(d).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Digraph frame_of(const ProblemInstance& p) {
  return p.kind == ProblemKind::k2Dmrs ? union_digraph(p.digraphs) : p.digraphs[0];
}

}  // namespace

Json to_json(const ProblemInstance& p, const Solution& s) {
  Json out{{"problem", problem_name(p.kind)}};
  if (const auto* a = std::get_if<ArcSetSolution>(&s)) {
    out["arcs"] = arcs_to_json(frame_of(p), a->arcs);
    out["objective"] = a->objective;
    out["certificate"] = to_json(a->certificate);
    out["certificate_digest"] = digest(a->certificate);
    return out;
  }
  const auto& q = std::get<SequenceSolution>(s);
  Json steps = Json::array();
  for (const Move& m : q.steps) {
    const Digraph& d = p.digraphs[m.graph];
    steps.push_back({{"digraph", m.graph + 1},
                     {"arc", arc_to_json(d, m.step.arc)},
                     {"added_arcs", arcs_to_json(d, m.step.added_arcs)}});
  }
  Json new_arcs = Json::array();
  for (std::size_t i = 0; i < q.new_arcs.size(); ++i) {
    new_arcs.push_back(arcs_to_json(p.digraphs[i], q.new_arcs[i]));
  }
  Json finals = Json::array();
  for (const Digraph& d : q.final_digraphs) finals.push_back(to_json(d));
  out["steps"] = std::move(steps);
  out["new_arcs"] = std::move(new_arcs);
  out["objective"] = q.objective;
  out["final_digraphs"] = std::move(finals);
  out["certificate"] = to_json(q.certificate);
  out["certificate_digest"] = digest(q.certificate);
  return out;
}

Solution solution_from_json(const ProblemInstance& p, const Json& j) {
  return guarded("solution", [&]() -> Solution {
    if (!is_sequence_problem(p.kind)) {
      const Digraph frame = frame_of(p);
      ArcSetSolution a;
      for (const auto& arc : j.at("arcs")) a.arcs.insert(arc_from_json(frame, arc));
      a.objective = j.value("objective", a.arcs.size());
      if (j.contains("certificate")) {
        a.certificate = digraph_from_json(j.at("certificate"));
      } else if (auto c = apply_arc_set(p, a.arcs)) {
        a.certificate = std::move(*c);
      }
      return a;
    }
    SequenceSolution q;
    for (const auto& step : j.at("steps")) {
      const std::size_t g = step.at("digraph").get<std::size_t>();
      if (g < 1 || g > p.digraphs.size()) throw DomainError("step names a missing digraph");
      const Digraph& d = p.digraphs[g - 1];
      ReversalStep s{arc_from_json(d, step.at("arc")), {}};
      for (const auto& a : step.value("added_arcs", Json::array())) {
        s.added_arcs.insert(arc_from_json(d, a));
      }
      q.steps.push_back({g - 1, std::move(s)});
    }
    if (!j.contains("new_arcs")) {
      // Steps alone: recompute everything by replay.
      return replay_sequence(p, q.steps);
    }
    const auto& na = j.at("new_arcs");
    for (std::size_t i = 0; i < na.size() && i < p.digraphs.size(); ++i) {
      ArcSet s;
      for (const auto& a : na[i]) s.insert(arc_from_json(p.digraphs[i], a));
      q.new_arcs.push_back(std::move(s));
    }
    q.objective = j.at("objective").get<std::size_t>();
    for (const auto& d : j.at("final_digraphs")) q.final_digraphs.push_back(digraph_from_json(d));
    q.certificate = digraph_from_json(j.at("certificate"));
    return q;
  });
}

Json to_json(const ReductionArtifact& a) {
  Json prov = Json::object();
  for (const auto& [name, p] : a.provenance) {
    Json entry{{"role", p.role}, {"origin", p.origin}};
    if (p.index) entry["index"] = p.index;
    prov[name] = std::move(entry);
  }
  return {{"reduction", reduction_name(a.kind)},
          {"source", to_json(a.source)},
          {"target", to_json(a.target)},
          {"provenance", std::move(prov)}};
}

ReductionArtifact artifact_from_json(const Json& j) {
  return guarded("reduction artifact", [&] {
    ReductionArtifact a;
    a.kind = parse_reduction(j.at("reduction").get<std::string>());
    a.source = instance_from_json(j.at("source"));
    // The target is checked by verify_reduction, not rejected here.
    a.target.kind = parse_problem(j.at("target").at("kind").get<std::string>());
    for (const auto& d : j.at("target").at("digraphs")) {
      a.target.digraphs.push_back(digraph_from_json(d));
    }
    for (const auto& [name, entry] : j.at("provenance").items()) {
      a.provenance[name] = Provenance{entry.at("role").get<std::string>(),
                                      entry.at("origin").get<std::vector<std::string>>(),
                                      entry.value("index", std::size_t{0})};
    }
    return a;
  });
}

Json to_json(const ReductionReport& r) {
  return {{"reduction", reduction_name(r.kind)},
          {"passed", r.passed()},
          {"construction_matches", r.construction_matches},
          {"counts_match", r.counts_match},
          {"target_valid", r.target_valid},
          {"source_optimum", r.source_optimum},
          {"target_optimum", r.target_optimum},
          {"optimum_correspondence", r.optimum_correspondence},
          {"forward_feasible", r.forward_feasible},
          {"backward_feasible", r.backward_feasible},
          {"backward_optimal", r.backward_optimal},
          {"round_trip", r.round_trip},
          {"target_shape", r.target_shape},
          {"failures", r.failures}};
}

Json to_json(const Digraph& d, const ExclusiveCycleReport& r) {
  Json witnesses = Json::array();
  for (const ExclusiveCycle& w : r.witnesses) {
    Json cycle = nullptr;
    if (w.cycle) {
      cycle = Json::array();
      for (const Arc& a : w.cycle->arcs) cycle.push_back(arc_to_json(d, a));
    }
    witnesses.push_back({{"arc", arc_to_json(d, w.arc)}, {"exclusive_cycle", std::move(cycle)}});
  }
  return {{"passed", r.passed()}, {"feasible", r.feasible}, {"witnesses", std::move(witnesses)}};
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("cannot write '" + path + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace bnfuse
