#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "bnfuse/errors.hpp"
#include "bnfuse/random.hpp"
#include "bnfuse/serialization.hpp"

using namespace bnfuse;

namespace {

Digraph three_cycle() { return Digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}); }

}  // namespace

TEST(Json, DigraphRoundTrip) {
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    Digraph d = random_digraph(rng, 1 + i % 6, 0.4, 12);
    const Json j = to_json(d);
    EXPECT_EQ(digraph_from_json(j), d);
    EXPECT_EQ(digest(digraph_from_json(j)), digest(d));
  }
  const Json j = to_json(three_cycle());
  EXPECT_EQ(j.at("vertices"), (Json{"a", "b", "c"}));
  EXPECT_EQ(j.at("arcs").front(), (Json{"a", "b"}));
}

TEST(Json, DigraphRejects) {
  EXPECT_THROW(digraph_from_json(parse_json_text(R"({"vertices":["a"]})")), ParseError);
  EXPECT_THROW(digraph_from_json(parse_json_text(R"({"vertices":["a","a"],"arcs":[]})")),
               DomainError);
  EXPECT_THROW(digraph_from_json(parse_json_text(R"({"vertices":["a"],"arcs":[["a","z"]]})")),
               DomainError);
  EXPECT_THROW(parse_json_text("{not json"), ParseError);
}

TEST(Json, OrderingAndModel) {
  Digraph d = three_cycle();
  Ordering alpha({2, 0, 1});
  EXPECT_EQ(ordering_to_json(d, alpha), (Json{"c", "a", "b"}));
  EXPECT_EQ(ordering_from_json(d, ordering_to_json(d, alpha)), alpha);
  EXPECT_THROW(ordering_from_json(d, Json{"a", "b"}), DomainError);
  Digraph chain({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  DependencyModel m = dsep_model(chain);
  EXPECT_EQ(model_from_json(chain.vertices(), to_json(m)), m);
}

TEST(Json, InstanceAndSolutionRoundTrip) {
  Rng rng(42);
  for (ProblemKind k : {ProblemKind::kMfas, ProblemKind::kMrs, ProblemKind::kDmrs,
                        ProblemKind::k2Dmrs, ProblemKind::kMnas, ProblemKind::k2Mnas}) {
    for (int i = 0; i < 10; ++i) {
      ProblemInstance p{k, {}};
      if (problem_arity(k) == 1) {
        p.digraphs.push_back(random_digraph(rng, 4, 0.4, 8));
      } else {
        p.digraphs.push_back(random_dag(rng, 4, 0.5, 5));
        p.digraphs.push_back(random_dag(rng, 4, 0.5, 5));
      }
      const ProblemInstance q = instance_from_json(to_json(p));
      EXPECT_EQ(q.kind, p.kind);
      EXPECT_EQ(q.digraphs, p.digraphs);
      const Solution s = solve_exact(p);
      const Json js = to_json(p, s);
      EXPECT_EQ(js.at("objective"), objective_of(s));
      EXPECT_EQ(js.at("certificate_digest"),
                digest(std::visit([](const auto& x) { return x.certificate; }, s)));
      const Solution back = solution_from_json(p, js);
      EXPECT_EQ(to_json(p, back), js);
    }
  }
}

TEST(Json, SequenceStepsAreOneBased) {
  Digraph ab({"a", "b"}, {{"a", "b"}});
  Digraph ba({"a", "b"}, {{"b", "a"}});
  ProblemInstance p{ProblemKind::kMnas, {ab, ba}};
  const Json j = to_json(p, solve_exact(p));
  ASSERT_EQ(j.at("steps").size(), 1u);
  EXPECT_EQ(j.at("steps")[0].at("digraph"), 1);
  EXPECT_EQ(j.at("steps")[0].at("arc"), (Json{"a", "b"}));
  Json replay_only = j;
  replay_only.erase("new_arcs");
  EXPECT_EQ(to_json(p, solution_from_json(p, replay_only)), j);
}

TEST(Json, ArtifactRoundTrip) {
  Rng rng(43);
  for (ReductionKind k : {ReductionKind::kMrsToDmrs, ReductionKind::kDmrsTo2Dmrs,
                          ReductionKind::kMrsToMnas, ReductionKind::kMnasTo2Mnas}) {
    const ReductionArtifact a = reduce(k, random_reduction_source(rng, k));
    const ReductionArtifact b = artifact_from_json(to_json(a));
    EXPECT_EQ(b.kind, a.kind);
    EXPECT_EQ(b.source.digraphs, a.source.digraphs);
    EXPECT_EQ(b.target.digraphs, a.target.digraphs);
    EXPECT_EQ(b.provenance, a.provenance);
    EXPECT_EQ(to_json(b), to_json(a));
  }
}

TEST(Json, ExpertsValidated) {
  const Json ok = parse_json_text(
      R"([{"name":"x","vertices":["a","b"],"arcs":[["a","b"]]},
          {"name":"y","vertices":["a","b"],"arcs":[]}])");
  ExpertSet e = experts_from_json(ok);
  EXPECT_EQ(e.labels, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(to_json(e), ok);
  const Json cyclic = parse_json_text(
      R"([{"name":"x","vertices":["a","b"],"arcs":[["a","b"],["b","a"]]}])");
  EXPECT_THROW(experts_from_json(cyclic), DomainError);
  EXPECT_THROW(experts_from_json(parse_json_text("{}")), ParseError);
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "bnfuse_serialization_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "d.json").string();
  write_text_file(path, to_json(three_cycle()).dump());
  EXPECT_EQ(digraph_from_json(read_json_file(path)), three_cycle());
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(f.path().filename(), "d.json");
  }
  std::ofstream(dir / "bad.json") << "[1,";
  EXPECT_THROW(read_json_file((dir / "bad.json").string()), ParseError);
  EXPECT_ANY_THROW(read_json_file((dir / "missing.json").string()));
  std::filesystem::remove_all(dir);
}
