#include <gtest/gtest.h>

#include "bnfuse/errors.hpp"
#include "bnfuse/fusion.hpp"
#include "bnfuse/independence.hpp"
#include "bnfuse/random.hpp"
#include "oracles.hpp"

using namespace bnfuse;

namespace {

VertexMask m(std::initializer_list<VertexId> vs) {
  VertexMask out = 0;
  for (VertexId v : vs) out |= VertexMask{1} << v;
  return out;
}

Digraph chain3() { return Digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

DependencyModel model_of(const std::vector<std::string>& u, const std::set<oracle::Triple>& ts) {
  DependencyModel out(u);
  for (const auto& [x, z, y] : ts) out.insert(IStatement::make(x, z, y));
  return out;
}

}  // namespace

TEST(IStatement, CanonicalForm) {
  IStatement s = IStatement::make(m({2}), m({}), m({0}));
  EXPECT_EQ(s.x, m({0}));
  EXPECT_EQ(s.y, m({2}));
  EXPECT_EQ(s, IStatement::make(m({0}), m({}), m({2})));
}

TEST(DependencyModel, RejectsMalformedStatements) {
  DependencyModel model({"a", "b", "c"});
  EXPECT_THROW(model.insert({m({0}), m({0}), m({1})}), DomainError);
  EXPECT_THROW(model.insert({m({}), m({}), m({1})}), DomainError);
  EXPECT_THROW(model.insert({m({0}), m({}), m({5})}), DomainError);
}

TEST(DSeparation, Examples) {
  EXPECT_TRUE(d_separated(chain3(), VertexSet{0}, VertexSet{1}, VertexSet{2}));
  Digraph collider({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  EXPECT_TRUE(d_separated(collider, VertexSet{0}, VertexSet{}, VertexSet{1}));
  EXPECT_FALSE(d_separated(collider, VertexSet{0}, VertexSet{2}, VertexSet{1}));
  Digraph isolated({"a", "b", "c"}, {{"a", "b"}});
  EXPECT_TRUE(d_separated(isolated, VertexSet{0}, VertexSet{}, VertexSet{2}));
}

TEST(DSeparation, DescendantOfColliderOpensIt) {
  Digraph d({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"c", "d"}});
  EXPECT_FALSE(d_separated(d, VertexSet{0}, VertexSet{3}, VertexSet{1}));
}

TEST(DSeparation, Errors) {
  Digraph cyc({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  EXPECT_THROW(d_separated(cyc, VertexSet{0}, VertexSet{}, VertexSet{1}), DomainError);
  EXPECT_THROW(d_separated(chain3(), VertexSet{0}, VertexSet{0}, VertexSet{2}), DomainError);
}

TEST(DSeparation, MatchesMoralGraphOracle) {
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 150; ++i) {
    Digraph d = random_dag(rng, 2 + i % 5, 0.5, 10);
    EXPECT_EQ(oracle::as_triples(dsep_model(d)), oracle::dsep_triples(d));
  }
}

TEST(DsepModel, Examples) {
  EXPECT_TRUE(dsep_model(Digraph({"a", "b"}, {{"a", "b"}})).empty());
  DependencyModel arcless = dsep_model(Digraph({"a", "b"}));
  ASSERT_EQ(arcless.size(), 1u);
  EXPECT_TRUE(arcless.contains(IStatement::make(m({0}), m({}), m({1}))));
  DependencyModel chain = dsep_model(chain3());
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_TRUE(chain.contains(IStatement::make(m({0}), m({1}), m({2}))));
}

TEST(DsepModel, Cap) {
  Caps caps;
  caps.closure_universe = 2;
  EXPECT_THROW(dsep_model(chain3(), caps), ScaleError);
}

TEST(Closure, DecompositionAndWeakUnion) {
  DependencyModel seeds({"a", "b", "c"});
  seeds.insert(IStatement::make(m({0}), m({}), m({1, 2})));
  DependencyModel cl = graphoid_closure(seeds, false);
  for (auto s : {IStatement::make(m({0}), m({}), m({1})), IStatement::make(m({0}), m({}), m({2})),
                 IStatement::make(m({0}), m({1}), m({2})), IStatement::make(m({0}), m({2}), m({1})),
                 IStatement::make(m({0}), m({}), m({1, 2}))}) {
    EXPECT_TRUE(cl.contains(s));
  }
  EXPECT_TRUE(graphoid_closure(DependencyModel({"a", "b"}), true).empty());
}

TEST(Closure, ChainBasisGivesDsepModel) {
  Digraph d = chain3();
  auto basis = recursive_basis(d, Ordering::from_names(d, {"a", "b", "c"}));
  EXPECT_EQ(graphoid_closure(basis.statements(), true), dsep_model(d));
}

TEST(Closure, MatchesNaiveFixpoint) {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 2 + i % 3;
    std::vector<std::string> u = vertex_names(n);
    auto all = oracle::all_triples(n);
    std::set<oracle::Triple> seeds;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int k = 0; k < 3; ++k) seeds.insert(all[pick(rng)]);
    for (bool inter : {false, true}) {
      DependencyModel got = graphoid_closure(model_of(u, seeds), inter);
      EXPECT_EQ(oracle::as_triples(got), oracle::closure(n, seeds, inter)) << "n=" << n;
    }
  }
}

TEST(Closure, MonotoneExtensiveIdempotent) {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 3 + i % 2;
    auto u = vertex_names(n);
    auto all = oracle::all_triples(n);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::set<oracle::Triple> small{all[pick(rng)]};
    std::set<oracle::Triple> big = small;
    big.insert(all[pick(rng)]);
    DependencyModel cs = graphoid_closure(model_of(u, small), true);
    DependencyModel cb = graphoid_closure(model_of(u, big), true);
    EXPECT_TRUE(is_imap(cs, cb));
    EXPECT_TRUE(is_imap(model_of(u, small), cs));
    EXPECT_EQ(graphoid_closure(cs, true), cs);
  }
}

TEST(Closure, DagModelsAreIntersectionalGraphoids) {
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    Digraph d = random_dag(rng, 3 + i % 3, 0.5, 10);
    DependencyModel model = dsep_model(d);
    EXPECT_TRUE(is_closed(model, true));
    EXPECT_EQ(graphoid_closure(model, true), model);
  }
}

TEST(Closure, Cap) {
  Caps caps;
  caps.closure_universe = 2;
  EXPECT_THROW(graphoid_closure(DependencyModel({"a", "b", "c"}), true, caps), ScaleError);
}

TEST(Counting, MatchesEnumeration) {
  for (unsigned n = 1; n <= 6; ++n) {
    auto [ordered, canonical] = oracle::count_triples(n);
    EXPECT_EQ(count_ordered_istatements(n), ordered);
    EXPECT_EQ(count_nontrivial_istatements(n), canonical);
    EXPECT_EQ(ordered, 2 * canonical);
  }
  EXPECT_EQ(count_nontrivial_istatements(1), 0u);
  EXPECT_EQ(count_nontrivial_istatements(2), 1u);
  EXPECT_EQ(count_nontrivial_istatements(3), 9u);
  EXPECT_THROW(count_nontrivial_istatements(0), DomainError);
}

TEST(ModelPredicates, ImapAndPerfectMap) {
  DependencyModel empty({"a", "b", "c"});
  DependencyModel chain = dsep_model(chain3());
  EXPECT_TRUE(is_imap(empty, chain));
  EXPECT_TRUE(is_imap(chain, chain));
  Digraph complete({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}});
  EXPECT_TRUE(is_imap(dsep_model(complete), chain));
  EXPECT_TRUE(is_perfect_map(chain, chain));
  EXPECT_FALSE(is_perfect_map(empty, chain));
  EXPECT_THROW(is_imap(empty, DependencyModel({"a", "b"})), DomainError);
}

TEST(ModelPredicates, IntersectionAndUnion) {
  DependencyModel chain = dsep_model(chain3());
  DependencyModel empty({"a", "b", "c"});
  EXPECT_EQ(model_intersection({chain, chain}), chain);
  EXPECT_EQ(model_intersection({chain, empty}), empty);
  Digraph back({"a", "b", "c"}, {{"c", "b"}, {"b", "a"}});
  EXPECT_EQ(model_intersection({chain, dsep_model(back)}), chain);
  EXPECT_EQ(model_union({chain, empty}), chain);
  EXPECT_EQ(model_union({chain, chain}), chain);
  EXPECT_THROW(model_union({chain, DependencyModel({"a"})}), DomainError);
}

TEST(ModelPredicates, UnionOverOrderingsAtThreeVertices) {
  Digraph d1({"a", "b", "c"}, {{"a", "b"}});
  Digraph d2({"a", "b", "c"}, {{"b", "c"}});
  ExpertSet e{{"x", "y"}, {d1, d2}};
  std::vector<DependencyModel> closures;
  std::vector<VertexId> seq{0, 1, 2};
  do {
    Ordering alpha(seq);
    auto unified = unified_recursive_basis({recursive_basis(d1, alpha), recursive_basis(d2, alpha)});
    closures.push_back(graphoid_closure(unified.statements(), true));
  } while (std::next_permutation(seq.begin(), seq.end()));
  EXPECT_EQ(model_union(closures), model_intersection({dsep_model(d1), dsep_model(d2)}));
}
