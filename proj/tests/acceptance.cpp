// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bnfuse/cli.hpp"
#include "bnfuse/errors.hpp"
#include "bnfuse/fusion.hpp"
#include "bnfuse/independence.hpp"
#include "bnfuse/optimization.hpp"
#include "bnfuse/random.hpp"
#include "bnfuse/reductions.hpp"
#include "bnfuse/serialization.hpp"
#include "fixture_search.hpp"
#include "oracles.hpp"

using namespace bnfuse;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fixture(const std::string& name) { return std::string(BNFUSE_FIXTURES_DIR) + "/" + name; }

template <class F>
void for_each_ordering(std::size_t n, F&& f) {
  std::vector<VertexId> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = i;
  do f(Ordering(seq));
  while (std::next_permutation(seq.begin(), seq.end()));
}

std::pair<int, std::string> run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

// Runs the built executable and captures its standard output.
std::pair<int, std::string> run_binary(const std::string& args) {
  const std::string cmd = std::string("\"") + BNFUSE_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

// Shared corpora: criterion 4 digraphs and criterion 6 artifacts.
std::vector<Digraph> digraph_corpus() {
  Rng rng(kDefaultSeed);
  std::vector<Digraph> out;
  for (int i = 0; i < 500; ++i) out.push_back(random_digraph(rng, 2 + i % 5, 0.45, 12));
  return out;
}

constexpr std::array<ReductionKind, 4> kReductions{
    ReductionKind::kMrsToDmrs, ReductionKind::kDmrsTo2Dmrs, ReductionKind::kMrsToMnas,
    ReductionKind::kMnasTo2Mnas};

std::vector<ReductionArtifact> reduction_corpus() {
  Rng rng(kDefaultSeed + 6);
  std::vector<ReductionArtifact> out;
  for (ReductionKind k : kReductions) {
    for (int i = 0; i < 100; ++i) out.push_back(reduce(k, random_reduction_source(rng, k)));
  }
  return out;
}

Outcome basis_closure() {
  Outcome o;
  Rng rng(kDefaultSeed + 1);
  std::size_t digraphs = 0, orderings = 0;
  for (int i = 0; i < 240; ++i) {
    const std::size_t n = 3 + i % 3;
    const Digraph d = random_dag(rng, n, 0.45, n * (n - 1) / 2);
    const DependencyModel m = dsep_model(d);
    o.require(oracle::as_triples(m) == oracle::dsep_triples(d), "d-separation oracle mismatch");
    ++digraphs;
    for_each_ordering(n, [&](const Ordering& alpha) {
      if (!consistent(alpha, d)) return;
      ++orderings;
      const RecursiveBasis b = recursive_basis(d, alpha);
      o.require(graphoid_closure(b.statements(), true) == m,
                "closure differs from d-separation model at instance " + std::to_string(i));
    });
  }
  o.detail = o.ok ? std::to_string(digraphs) + " digraphs, " + std::to_string(orderings) +
                        " consistent orderings"
                  : o.detail;
  return o;
}

Outcome unified_basis() {
  Outcome o;
  Rng rng(kDefaultSeed + 2);
  std::size_t removals = 0;
  for (int i = 0; i < 120; ++i) {
    const std::size_t n = 2 + i % 4;
    ExpertSet e{{"d1", "d2"}, {random_dag(rng, n, 0.5, 10), random_dag(rng, n, 0.5, 10)}};
    const Ordering alpha = random_ordering(rng, n);
    const DependencyModel inter = model_intersection({dsep_model(e.dags[0]), dsep_model(e.dags[1])});
    const RecursiveBasis unified =
        unified_recursive_basis({recursive_basis(e.dags[0], alpha), recursive_basis(e.dags[1], alpha)});
    o.require(unified == recursive_basis_of_model(inter, alpha),
              "unified basis differs from the intersection basis at pair " + std::to_string(i));
    const Digraph c = consensus_dag(e, {0, 1}, alpha);
    o.require(is_imap(dsep_model(c), inter), "consensus is not an I-map at pair " + std::to_string(i));
    for (const Arc& a : c.arcs()) {
      ++removals;
      o.require(!is_imap(dsep_model(remove_arcs(c, {a})), inter),
                "consensus not minimal at pair " + std::to_string(i));
    }
  }
  if (o.ok) o.detail = "120 pairs, " + std::to_string(removals) + " single-arc removals";
  return o;
}

Outcome ordering_union() {
  Outcome o;
  Rng rng(kDefaultSeed + 3);
  for (int i = 0; i < 24; ++i) {
    ExpertSet e{{"d1", "d2"}, {random_dag(rng, 4, 0.5, 6), random_dag(rng, 4, 0.5, 6)}};
    const DependencyModel inter = model_intersection({dsep_model(e.dags[0]), dsep_model(e.dags[1])});
    std::vector<DependencyModel> per_ordering;
    for_each_ordering(4, [&](const Ordering& alpha) {
      per_ordering.push_back(dsep_model(consensus_dag(e, {0, 1}, alpha)));
    });
    o.require(per_ordering.size() == 24, "expected 24 orderings");
    o.require(model_union(per_ordering) == inter,
              "union over orderings differs from intersection at pair " + std::to_string(i));
  }
  if (o.ok) o.detail = "24 pairs x 24 orderings";
  return o;
}

Outcome mrs_mfas(const std::vector<Digraph>& corpus) {
  Outcome o;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Digraph& d = corpus[i];
    const auto mrs = solve_mrs_exact(d);
    const auto mfas = solve_mfas_exact(d);
    o.require(mrs.objective == mfas.objective, "MRS and MFAS optima differ at " + std::to_string(i));
    o.require(mfas.objective == oracle::mfas_by_orderings(d),
              "MFAS differs from ordering oracle at " + std::to_string(i));
    o.require(mrs.objective == oracle::mrs_by_subsets(d).size(),
              "MRS differs from subset oracle at " + std::to_string(i));
  }
  if (o.ok) o.detail = std::to_string(corpus.size()) + " digraphs";
  return o;
}

Outcome exclusive_cycles(const std::vector<Digraph>& corpus) {
  Outcome o;
  std::size_t arcs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto s = solve_mrs_exact(corpus[i]);
    const auto r = verify_exclusive_cycles(corpus[i], s);
    arcs += s.arcs.size();
    o.require(r.passed(), "no exclusive cycle at instance " + std::to_string(i));
  }
  if (o.ok) o.detail = std::to_string(arcs) + " solution arcs with exclusive cycles";
  return o;
}

GadgetCounts formula(const ReductionArtifact& a) {
  const std::size_t n = a.source.digraphs[0].vertex_count();
  const std::size_t e1 = a.source.digraphs[0].arc_count();
  const std::size_t e2 = a.source.digraphs.size() > 1 ? a.source.digraphs[1].arc_count() : 0;
  switch (a.kind) {
    case ReductionKind::kMrsToDmrs: return {2 * e1, 3 * e1, {e1, 2 * e1}};
    case ReductionKind::kDmrsTo2Dmrs: return {n * n * e2, 2 * n * n * e2, {e1, 2 * n * n * e2}};
    case ReductionKind::kMrsToMnas: return {3 * e1, 4 * e1, {2 * e1, 2 * e1}};
    case ReductionKind::kMnasTo2Mnas: return {n * n * n, n * n * n, {e1, e2 + n * n * n}};
  }
  return {};
}

Outcome reductions(const std::vector<ReductionArtifact>& corpus) {
  Outcome o;
  std::map<std::string, std::size_t> passed;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const ReductionArtifact& a = corpus[i];
    const std::string name = reduction_name(a.kind);
    const ReductionReport r = verify_reduction(a);
    o.require(r.passed(), name + " instance " + std::to_string(i) + ": " +
                              (r.failures.empty() ? "" : r.failures.front()));
    o.require(r.optimum_correspondence && r.round_trip, name + " correspondence failed");
    o.require(observed_counts(a) == formula(a), name + " gadget counts off formula");
    o.require(a.target.digraphs[0].vertex_count() ==
                  a.source.digraphs[0].vertex_count() + formula(a).fresh_vertices,
              name + " fresh vertex count");
    passed[name] += r.passed();
  }
  if (o.ok) {
    for (const auto& [k, v] : passed) o.detail += k + " " + std::to_string(v) + "/100 ";
  }
  return o;
}

Outcome objective_divergence() {
  Outcome o;
  const auto found = fixtures::find_divergence(kDefaultSeed, 4, 5000);
  o.require(found.has_value(), "no divergent pair found");
  if (!found) return o;
  const Json shipped = read_json_file(fixture("objective_divergence.json"));
  o.require(shipped == to_json(found->experts), "shipped fixture differs from the search result");

  const std::string file = fixture("objective_divergence.json");
  const auto most = run_cli({"fuse", file, "--ordering", "exhaustive:retained-independencies"});
  const auto fewest = run_cli({"fuse", file, "--ordering", "exhaustive:min-new-arcs"});
  o.require(most.first == 0 && fewest.first == 0, "fuse failed on the fixture");
  if (!o.ok) return o;
  const Json jm = Json::parse(most.second);
  const Json jf = Json::parse(fewest.second);
  o.require(jm.at("ordering") != jf.at("ordering"), "orderings coincide");
  const auto retained_most = jm.at("consensus")[0].at("scores").at("retained-independencies").get<long>();
  const auto retained_fewest = jf.at("consensus")[0].at("scores").at("retained-independencies").get<long>();
  o.require(retained_fewest < retained_most, "fewest-new-arcs ordering keeps as many independencies");
  for (int rep = 0; rep < 2; ++rep) {
    o.require(run_cli({"fuse", file, "--ordering", "exhaustive:min-new-arcs"}).second == fewest.second,
              "fuse output not reproducible");
  }
  if (o.ok) {
    o.detail = "fewest new arcs " + jf.at("ordering").dump() + " keeps " +
               std::to_string(retained_fewest) + ", best " + jm.at("ordering").dump() + " keeps " +
               std::to_string(retained_most) + " (found after " +
               std::to_string(found->attempts) + " pairs)";
  }
  return o;
}

Outcome counting() {
  Outcome o;
  const Json golden = read_json_file(std::string(BNFUSE_GOLDEN_DIR) + "/istatement_counts.json");
  for (unsigned n = 1; n <= 6; ++n) {
    const auto [ordered, canonical] = oracle::count_triples(n);
    o.require(count_nontrivial_istatements(n) == canonical, "canonical count mismatch at n=" + std::to_string(n));
    o.require(count_ordered_istatements(n) == ordered, "ordered count mismatch at n=" + std::to_string(n));
    o.require(golden.at("canonical")[n - 1].get<std::uint64_t>() == canonical,
              "golden canonical value disagrees with enumeration at n=" + std::to_string(n));
    o.require(golden.at("ordered")[n - 1].get<std::uint64_t>() == ordered,
              "golden ordered value disagrees with enumeration at n=" + std::to_string(n));
  }
  if (o.ok) o.detail = "n=1..6: " + golden.at("canonical").dump();
  return o;
}

Outcome heuristics(const std::vector<Digraph>& digraphs,
                   const std::vector<ReductionArtifact>& artifacts) {
  Outcome o;
  std::size_t pairs = 0, strict = 0;
  auto compare = [&](const ProblemInstance& p, const std::string& where) {
    std::optional<std::size_t> exact;
    try {
      exact = objective_of(solve_exact(p));
    } catch (const InfeasibleError&) {
    }
    try {
      const Solution g = solve_greedy(p);
      const bool feasible = std::holds_alternative<ArcSetSolution>(g)
                                ? arc_set_feasible(p, std::get<ArcSetSolution>(g).arcs)
                                : sequence_verified(p, std::get<SequenceSolution>(g));
      o.require(feasible, "greedy solution infeasible on " + where);
      if (exact) {
        o.require(objective_of(g) >= *exact, "greedy beats exact on " + where);
        strict += objective_of(g) > *exact;
      }
    } catch (const InfeasibleError&) {
      o.require(!exact, "greedy reports infeasible where exact succeeds on " + where);
    }
    ++pairs;
  };
  for (std::size_t i = 0; i < digraphs.size(); ++i) {
    compare({ProblemKind::kMfas, {digraphs[i]}}, "mfas " + std::to_string(i));
    compare({ProblemKind::kMrs, {digraphs[i]}}, "mrs " + std::to_string(i));
  }
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    compare(artifacts[i].source, "reduction source " + std::to_string(i));
    compare(artifacts[i].target, "reduction target " + std::to_string(i));
  }
  if (o.ok) o.detail = std::to_string(pairs) + " paired runs, greedy worse on " + std::to_string(strict);
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> commands{
      "--seed 5 verify reduction --count 10",
      "verify theorem1 --count 20",
      "fuse \"" + fixture("objective_divergence.json") + "\"",
      "solve mnas \"" + fixture("mnas_pair.json") + "\" --greedy",
      "--format text solve 2dmrs \"" + fixture("mnas_pair.json") + "\"",
      "count 6",
  };
  for (const std::string& c : commands) {
    const auto first = run_binary(c);
    o.require(first.first == 0 && !first.second.empty(), "command failed: " + c);
    for (int rep = 0; rep < 2; ++rep) {
      o.require(run_binary(c) == first, "output differs between runs: " + c);
    }
  }
  if (o.ok) o.detail = std::to_string(commands.size()) + " commands x 3 runs byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<Digraph> digraphs = digraph_corpus();
  const std::vector<ReductionArtifact> artifacts = reduction_corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 recursive basis closure equals d-separation", basis_closure},
      {"2 unified basis and minimal I-map", unified_basis},
      {"3 union over orderings equals intersection", ordering_union},
      {"4 MRS optimum equals MFAS optimum", [&] { return mrs_mfas(digraphs); }},
      {"5 exclusive cycles for minimum MRS solutions", [&] { return exclusive_cycles(digraphs); }},
      {"6 reduction suites", [&] { return reductions(artifacts); }},
      {"7 ordering objectives diverge on shipped fixture", objective_divergence},
      {"8 independence statement counts", counting},
      {"9 greedy never beats exact", [&] { return heuristics(digraphs, artifacts); }},
      {"10 deterministic CLI reports", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s (%.1fs): %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
