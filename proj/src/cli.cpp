#include "bnfuse/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bnfuse/errors.hpp"
#include "bnfuse/independence.hpp"
#include "bnfuse/optimization.hpp"
#include "bnfuse/random.hpp"
#include "bnfuse/reductions.hpp"
#include "bnfuse/serialization.hpp"

namespace bnfuse::cli {

namespace {

struct CapField {
  const char* name;
  std::size_t Caps::*field;
};

constexpr CapField kCapFields[] = {
    {"arc-subset", &Caps::arc_subset},
    {"closure-universe", &Caps::closure_universe},
    {"cycle-budget", &Caps::cycle_budget},
    {"cycle-vertices", &Caps::cycle_vertices},
    {"dp-vertices", &Caps::dp_vertices},
    {"ordering-factorial", &Caps::ordering_factorial},
    {"search-frontier", &Caps::search_frontier},
    {"subsets", &Caps::subsets},
};

Json config_json(const RunConfig& c) {
  Json caps = Json::object();
  for (const CapField& f : kCapFields) caps[f.name] = c.caps.*f.field;
  return {{"caps", std::move(caps)},
          {"format", c.format},
          {"objective", objective_name(c.objective)}};
}

void apply_config_file(RunConfig& c, const Json& j) {
  if (!j.is_object()) throw ParseError("config file must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "format") {
        c.format = value.get<std::string>();
      } else if (key == "objective") {
        c.objective = parse_objective(value.get<std::string>());
      } else if (key == "caps") {
        for (const auto& [name, v] : value.items()) {
          auto it = std::find_if(std::begin(kCapFields), std::end(kCapFields),
                                 [&](const CapField& f) { return name == f.name; });
          if (it == std::end(kCapFields)) throw ParseError("unknown cap '" + name + "'");
          c.caps.*(it->field) = v.get<std::size_t>();
        }
      } else {
        throw ParseError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
}

void validate_config(const RunConfig& c) {
  if (c.format != "json" && c.format != "text") {
    throw ParseError("format must be json or text");
  }
  for (const CapField& f : kCapFields) {
    if (c.caps.*f.field == 0) throw DomainError(std::string("cap ") + f.name + " must be positive");
  }
}

void flatten(const Json& j, const std::string& path, std::ostream& out) {
  const bool nested_array =
      j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (nested_array) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << " = " << j.dump() << "\n";
  }
}

struct Output {
  const RunConfig& config;
  std::ostream& out;
  std::string path;  // empty: stream

  void emit(Json report) const {
    report["config"] = config_json(config);
    report["seed"] = config.seed;
    std::ostringstream text;
    if (config.format == "text") {
      flatten(report, "", text);
    } else {
      text << report.dump(2) << "\n";
    }
    if (path.empty()) {
      out << text.str();
    } else {
      write_text_file(path, text.str());
    }
  }
};

// ---------------------------------------------------------------------------
// fuse

Ordering choose_ordering(const ExpertSet& experts, const std::string& spec, const Caps& caps,
                         Json& report) {
  const ExpertSubset everyone = all_experts(experts);
  if (spec == "greedy") return search_ordering_greedy(experts, everyone);
  const std::string prefix = "exhaustive:";
  if (spec.rfind(prefix, 0) == 0) {
    const Objective o = parse_objective(spec.substr(prefix.size()));
    OrderingScore best = search_ordering_exhaustive(experts, everyone, o, caps);
    report["search"] = {{"objective", objective_name(o)}, {"score", best.score}};
    return best.ordering;
  }
  std::vector<std::string> names;
  std::stringstream in(spec);
  for (std::string item; std::getline(in, item, ',');) names.push_back(item);
  return Ordering::from_names(experts.front(), names);
}

int cmd_fuse(const Output& o, const std::string& file, std::optional<std::size_t> k,
             std::string spec) {
  const ExpertSet experts = experts_from_json(read_json_file(file));
  if (spec.empty()) spec = std::string("exhaustive:") + objective_name(o.config.objective);
  Json report{{"command", "fuse"}, {"ordering_spec", spec}};
  const Caps& caps = o.config.caps;
  const Ordering alpha = choose_ordering(experts, spec, caps, report);
  const Digraph& frame = experts.front();
  const std::size_t kk = k.value_or(experts.size());

  Json consensus = Json::array();
  for (const auto& [subset, dag] : consensus_all_subsets(experts, kk, alpha, caps)) {
    Json labels = Json::array();
    for (std::size_t i : subset) labels.push_back(experts.labels[i]);
    Json scores{{objective_name(Objective::kMinNewArcs), new_arcs_for(experts, subset, alpha)},
                {objective_name(Objective::kMinUnionArcs), dag.arc_count()}};
    if (frame.vertex_count() <= caps.closure_universe) {
      scores[objective_name(Objective::kRetainedIndependencies)] =
          retained_independencies(experts, subset, alpha, caps);
    }
    consensus.push_back({{"experts", std::move(labels)},
                         {"dag", to_json(dag)},
                         {"scores", std::move(scores)}});
  }
  report["k"] = kk;
  report["ordering"] = ordering_to_json(frame, alpha);
  report["consensus"] = std::move(consensus);
  o.emit(std::move(report));
  return kOk;
}

// ---------------------------------------------------------------------------
// solve / reduce

ProblemInstance read_instance(const std::string& file, ProblemKind kind) {
  const Json j = read_json_file(file);
  ProblemInstance p;
  p.kind = kind;
  try {
    if (j.is_object() && j.contains("digraphs")) {
      if (j.contains("kind") && parse_problem(j.at("kind").get<std::string>()) != kind &&
          problem_arity(parse_problem(j.at("kind").get<std::string>())) != problem_arity(kind)) {
        throw DomainError("instance file holds a " + j.at("kind").get<std::string>() +
                          " instance");
      }
      for (const auto& d : j.at("digraphs")) p.digraphs.push_back(digraph_from_json(d));
    } else {
      p.digraphs.push_back(digraph_from_json(j));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
  p.validate();
  return p;
}

int cmd_solve(const Output& o, const std::string& kind, const std::string& file, bool greedy) {
  const ProblemInstance p = read_instance(file, parse_problem(kind));
  const Solution s = greedy ? solve_greedy(p, o.config.caps) : solve_exact(p, o.config.caps);
  bool verified = false;
  if (const auto* a = std::get_if<ArcSetSolution>(&s)) {
    verified = arc_set_feasible(p, a->arcs);
  } else {
    verified = sequence_verified(p, std::get<SequenceSolution>(s));
  }
  o.emit({{"command", "solve"},
          {"problem", kind},
          {"method", greedy ? "greedy" : "exact"},
          {"verified", verified},
          {"solution", to_json(p, s)}});
  return verified ? kOk : kVerificationFailed;
}

int cmd_reduce(const Output& o, const std::string& kind, const std::string& file) {
  const ReductionKind r = parse_reduction(kind);
  const ReductionArtifact a = reduce(r, read_instance(file, reduction_source(r)));
  Json report = to_json(a);
  report["command"] = "reduce";
  o.emit(std::move(report));
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

template <class F>
void for_each_permutation(std::size_t n, const Caps& caps, F&& f) {
  if (n > caps.ordering_factorial) {
    throw ScaleError("ordering enumeration over " + std::to_string(n) + " vertices exceeds cap " +
                     std::to_string(caps.ordering_factorial));
  }
  std::vector<VertexId> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = i;
  do {
    f(Ordering(seq));
  } while (std::next_permutation(seq.begin(), seq.end()));
}

std::vector<Digraph> dags_from_file(const std::string& file) {
  const Json j = read_json_file(file);
  if (j.is_array()) return experts_from_json(j).dags;
  return {digraph_from_json(j)};
}

struct Sweep {
  std::size_t instances = 0;
  std::size_t checks = 0;
  Json counterexample = nullptr;

  bool passed() const { return counterexample.is_null(); }
  Json json() const {
    return {{"instances", instances}, {"checks", checks}, {"counterexample", counterexample}};
  }
};

void basis_closure_check(const Digraph& d, const Caps& caps, Sweep& sweep) {
  ++sweep.instances;
  const DependencyModel model = dsep_model(d, caps);
  for_each_permutation(d.vertex_count(), caps, [&](const Ordering& alpha) {
    if (!sweep.passed() || !consistent(alpha, d)) return;
    ++sweep.checks;
    const DependencyModel closure =
        graphoid_closure(recursive_basis(d, alpha).statements(), true, caps);
    if (closure != model) {
      sweep.counterexample = {{"digraph", to_json(d)},
                              {"ordering", ordering_to_json(d, alpha)},
                              {"closure_size", closure.size()},
                              {"dsep_size", model.size()}};
    }
  });
}

DependencyModel agreement_model(const ExpertSet& e, const Caps& caps) {
  std::vector<DependencyModel> models;
  for (const Digraph& d : e.dags) models.push_back(dsep_model(d, caps));
  return model_intersection(models);
}

void unified_basis_check(const ExpertSet& e, const Ordering& alpha, const Caps& caps, Sweep& sweep) {
  ++sweep.instances;
  const DependencyModel agreed = agreement_model(e, caps);
  std::vector<RecursiveBasis> bases;
  for (const Digraph& d : e.dags) bases.push_back(recursive_basis(d, alpha));
  const RecursiveBasis unified = unified_recursive_basis(bases);
  const RecursiveBasis direct = recursive_basis_of_model(agreed, alpha);
  const Digraph consensus = dag_from_basis(unified);
  auto witness = [&](const std::string& part) {
    sweep.counterexample = {{"experts", to_json(e)},
                            {"ordering", ordering_to_json(e.front(), alpha)},
                            {"failed", part}};
  };
  ++sweep.checks;
  if (!(unified == direct)) return witness("unified basis differs from the agreement basis");
  ++sweep.checks;
  if (!is_imap(dsep_model(consensus, caps), agreed)) return witness("consensus is not an I-map");
  for (const Arc& a : consensus.arcs()) {
    ++sweep.checks;
    if (is_imap(dsep_model(remove_arcs(consensus, {a}), caps), agreed)) {
      return witness("consensus stays an I-map without " + consensus.arc_label(a));
    }
  }
}

void ordering_union_check(const ExpertSet& e, const Caps& caps, Sweep& sweep) {
  ++sweep.instances;
  const DependencyModel agreed = agreement_model(e, caps);
  std::vector<DependencyModel> covered;
  for_each_permutation(e.front().vertex_count(), caps, [&](const Ordering& alpha) {
    ++sweep.checks;
    covered.push_back(dsep_model(consensus_dag(e, all_experts(e), alpha), caps));
  });
  const DependencyModel joined = model_union(covered);
  if (joined != agreed) {
    sweep.counterexample = {{"experts", to_json(e)},
                            {"union_size", joined.size()},
                            {"agreement_size", agreed.size()}};
  }
}

ExpertSet random_pair(Rng& rng, std::size_t n) {
  const std::size_t max_arcs = n * (n - 1) / 2;
  return {{"d1", "d2"}, {random_dag(rng, n, 0.5, max_arcs), random_dag(rng, n, 0.5, max_arcs)}};
}

int cmd_verify(const Output& o, const std::string& what, const std::vector<std::string>& files,
               std::optional<std::size_t> count) {
  const Caps& caps = o.config.caps;
  Rng rng(o.config.seed);
  Json report{{"command", "verify"}, {"what", what}};
  bool passed = true;

  if (what == "theorem1") {
    Sweep sweep;
    if (files.empty()) {
      for (std::size_t i = 0; i < count.value_or(200) && sweep.passed(); ++i) {
        const std::size_t n = 3 + i % 3;
        basis_closure_check(random_dag(rng, n, 0.5, n * (n - 1) / 2), caps, sweep);
      }
    }
    for (const std::string& f : files) {
      for (const Digraph& d : dags_from_file(f)) basis_closure_check(d, caps, sweep);
    }
    passed = sweep.passed();
    report["result"] = sweep.json();
  } else if (what == "lemma2") {
    Sweep sweep;
    if (files.empty()) {
      for (std::size_t i = 0; i < count.value_or(100) && sweep.passed(); ++i) {
        const std::size_t n = 3 + i % 3;
        const ExpertSet e = random_pair(rng, n);
        unified_basis_check(e, random_ordering(rng, n), caps, sweep);
      }
    }
    for (const std::string& f : files) {
      const ExpertSet e = experts_from_json(read_json_file(f));
      for_each_permutation(e.front().vertex_count(), caps, [&](const Ordering& alpha) {
        if (sweep.passed()) unified_basis_check(e, alpha, caps, sweep);
      });
    }
    passed = sweep.passed();
    report["result"] = sweep.json();
  } else if (what == "theorem3") {
    Sweep sweep;
    if (files.empty()) {
      for (std::size_t i = 0; i < count.value_or(20) && sweep.passed(); ++i) {
        ordering_union_check(random_pair(rng, 4), caps, sweep);
      }
    }
    for (const std::string& f : files) {
      ordering_union_check(experts_from_json(read_json_file(f)), caps, sweep);
    }
    passed = sweep.passed();
    report["result"] = sweep.json();
  } else if (what == "claim1") {
    if (files.empty() || files.size() > 2) {
      throw ParseError("claim1 takes an instance file and an optional solution file");
    }
    const ProblemInstance p = read_instance(files[0], ProblemKind::kMrs);
    const Digraph& d = p.digraphs[0];
    ArcSetSolution solution;
    const Json first = read_json_file(files[0]);
    if (files.size() == 2) {
      solution = std::get<ArcSetSolution>(solution_from_json(p, read_json_file(files[1])));
    } else if (first.is_object() && first.contains("solution")) {
      solution = std::get<ArcSetSolution>(solution_from_json(p, first.at("solution")));
    } else {
      solution = solve_mrs_exact(d, caps);
    }
    const ExclusiveCycleReport r = verify_exclusive_cycles(d, solution, caps);
    passed = r.passed();
    report["digraph"] = to_json(d);
    report["solution"] = arcs_to_json(d, solution.arcs);
    report["result"] = to_json(d, r);
  } else if (what == "reduction") {
    Json results = Json::array();
    std::vector<ReductionArtifact> artifacts;
    for (const std::string& f : files) artifacts.push_back(artifact_from_json(read_json_file(f)));
    if (files.empty()) {
      for (ReductionKind k : {ReductionKind::kMrsToDmrs, ReductionKind::kDmrsTo2Dmrs,
                              ReductionKind::kMrsToMnas, ReductionKind::kMnasTo2Mnas}) {
        for (std::size_t i = 0; i < count.value_or(100); ++i) {
          artifacts.push_back(reduce(k, random_reduction_source(rng, k)));
        }
      }
    }
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // kind -> (runs, fails)
    for (const ReductionArtifact& a : artifacts) {
      const ReductionReport r = verify_reduction(a, caps);
      auto& t = tally[reduction_name(a.kind)];
      ++t.first;
      if (!r.passed()) {
        ++t.second;
        passed = false;
        Json failed = to_json(r);
        failed["artifact"] = to_json(a);
        results.push_back(std::move(failed));
      } else if (!files.empty()) {
        results.push_back(to_json(r));
      }
    }
    Json summary = Json::object();
    for (const auto& [k, t] : tally) summary[k] = {{"instances", t.first}, {"failures", t.second}};
    report["summary"] = std::move(summary);
    report["reports"] = std::move(results);
  } else {
    throw ParseError("unknown verification target '" + what + "'");
  }
  report["passed"] = passed;
  o.emit(std::move(report));
  return passed ? kOk : kVerificationFailed;
}

int cmd_count(const Output& o, unsigned n) {
  o.emit({{"command", "count"},
          {"n", n},
          {"ordered", count_ordered_istatements(n)},
          {"canonical", count_nontrivial_istatements(n)}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Belief-network structure fusion and arc-reversal optimization", "bnfuse"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_file, format;
  std::uint64_t seed = 0;
  app.add_option("--config", config_file, "JSON run configuration");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  auto* format_opt = app.add_option("--format", format, "json or text")
                         ->check(CLI::IsMember({"json", "text"}));
  std::map<std::string, std::size_t> cap_values;
  std::map<std::string, CLI::Option*> cap_opts;
  for (const CapField& f : kCapFields) {
    cap_opts[f.name] = app.add_option(std::string("--cap-") + f.name, cap_values[f.name])
                           ->check(CLI::PositiveNumber);
  }
  std::string out_path;

  auto* fuse = app.add_subcommand("fuse", "consensus DAGs from expert digraphs");
  std::string expert_file, ordering_spec;
  std::size_t k = 0;
  fuse->add_option("experts", expert_file, "expert file")->required();
  auto* k_opt = fuse->add_option("--k", k, "agreement threshold (default: all experts)");
  fuse->add_option("--ordering", ordering_spec,
                   "a,b,c | greedy | exhaustive:<objective> (default: exhaustive with the "
                   "configured objective)");
  fuse->add_option("--out", out_path, "write the report here");

  auto* solve = app.add_subcommand("solve", "solve an arc-set or reversal problem");
  std::string solve_kind, instance_file;
  bool greedy = false, exact = false;
  solve->add_option("kind", solve_kind)
      ->required()
      ->check(CLI::IsMember({"mfas", "mrs", "dmrs", "2dmrs", "mnas", "2mnas"}));
  solve->add_option("instance", instance_file)->required();
  auto* greedy_flag = solve->add_flag("--greedy", greedy, "heuristic solver");
  solve->add_flag("--exact", exact, "exact solver (default)")->excludes(greedy_flag);
  solve->add_option("--out", out_path, "write the report here");

  auto* reduce_cmd = app.add_subcommand("reduce", "build a reduction artifact");
  std::string reduce_kind;
  reduce_cmd->add_option("kind", reduce_kind)
      ->required()
      ->check(CLI::IsMember({"mrs-to-dmrs", "dmrs-to-2dmrs", "mrs-to-mnas", "mnas-to-2mnas"}));
  reduce_cmd->add_option("instance", instance_file)->required();
  reduce_cmd->add_option("--out", out_path, "write the artifact here");

  auto* verify = app.add_subcommand("verify", "check a structural claim on instances");
  std::string what;
  std::vector<std::string> files;
  std::size_t count = 0;
  verify->add_option("what", what)
      ->required()
      ->check(CLI::IsMember({"theorem1", "lemma2", "theorem3", "claim1", "reduction"}));
  verify->add_option("files", files, "instance files (default: random sweep)");
  auto* count_opt = verify->add_option("--count", count, "random instances per sweep")
                        ->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "write the report here");

  auto* count_cmd = app.add_subcommand("count", "count nontrivial independence statements");
  unsigned n = 0;
  count_cmd->add_option("n", n)->required();

  std::vector<std::string> argv_store{"bnfuse"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseOrDomain;
  }

  RunConfig config;
  try {
    if (!config_file.empty()) apply_config_file(config, read_json_file(config_file));
    if (seed_opt->count()) config.seed = seed;
    if (format_opt->count()) config.format = format;
    for (const CapField& f : kCapFields) {
      if (cap_opts[f.name]->count()) config.caps.*f.field = cap_values[f.name];
    }
    validate_config(config);

    const Output o{config, out, out_path};
    if (fuse->parsed()) {
      return cmd_fuse(o, expert_file, k_opt->count() ? std::optional<std::size_t>(k) : std::nullopt,
                      ordering_spec);
    }
    if (solve->parsed()) return cmd_solve(o, solve_kind, instance_file, greedy);
    if (reduce_cmd->parsed()) return cmd_reduce(o, reduce_kind, instance_file);
    if (verify->parsed()) {
      return cmd_verify(o, what, files,
                        count_opt->count() ? std::optional<std::size_t>(count) : std::nullopt);
    }
    return cmd_count(o, n);
  } catch (const ScaleError& e) {
    err << "scale error: " << e.what() << "\n";
    return kScale;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kParseOrDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kParseOrDomain;
  }
}

}  // namespace bnfuse::cli
