// Writes the shipped fixtures into the directory given as the argument.
#include <iostream>
#include <string>

#include "bnfuse/config.hpp"
#include "bnfuse/optimization.hpp"
#include "bnfuse/random.hpp"
#include "bnfuse/reductions.hpp"
#include "bnfuse/serialization.hpp"
#include "fixture_search.hpp"

using namespace bnfuse;

namespace {

void save(const std::string& dir, const std::string& name, const Json& j) {
  write_text_file(dir + "/" + name, j.dump(2) + "\n");
  std::cout << "wrote " << name << "\n";
}

Digraph three_cycle() { return Digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}); }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  const std::string dir = argv[1];

  auto divergence = fixtures::find_divergence(kDefaultSeed, 4, 5000);
  if (!divergence) {
    std::cerr << "no divergent pair found\n";
    return 1;
  }
  std::cout << "divergent pair after " << divergence->attempts << " attempts\n";
  save(dir, "objective_divergence.json", to_json(divergence->experts));

  const Digraph chain({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  save(dir, "identical_chains.json", to_json(ExpertSet{{"left", "right"}, {chain, chain}}));

  const ProblemInstance cycle{ProblemKind::kMrs, {three_cycle()}};
  save(dir, "three_cycle.json", to_json(cycle));

  Json bad_claim = to_json(cycle);
  bad_claim["solution"] = {{"arcs", Json::array({Json::array({"a", "b"}), Json::array({"c", "a"})})}};
  save(dir, "corrupted_exclusive_cycles.json", bad_claim);

  const Digraph ab({"a", "b"}, {{"a", "b"}});
  const Digraph ba({"a", "b"}, {{"b", "a"}});
  save(dir, "three_cycle_mrs_to_dmrs.json", to_json(reduce_mrs_to_dmrs(three_cycle())));
  save(dir, "three_cycle_mrs_to_mnas.json", to_json(reduce_mrs_to_mnas(three_cycle())));
  save(dir, "antiparallel_dmrs_to_2dmrs.json", to_json(reduce_dmrs_to_2dmrs(ab, ba)));
  save(dir, "antiparallel_mnas_to_2mnas.json", to_json(reduce_mnas_to_2mnas(ab, ba)));

  Json corrupted = to_json(reduce_mrs_to_dmrs(three_cycle()));
  corrupted["target"]["digraphs"][1]["arcs"].erase(0);
  save(dir, "corrupted_artifact.json", corrupted);

  // An MNAS pair on which the greedy sequence pays more than the optimum.
  Rng rng(kDefaultSeed);
  for (std::size_t t = 0; t < 5000; ++t) {
    ProblemInstance p{ProblemKind::kMnas, {random_dag(rng, 5, 0.5, 10), random_dag(rng, 5, 0.5, 10)}};
    const std::size_t exact = objective_of(solve_exact(p));
    const std::size_t greedy = objective_of(solve_greedy(p));
    if (greedy > exact) {
      std::cout << "mnas pair: exact " << exact << ", greedy " << greedy << "\n";
      save(dir, "mnas_pair.json", to_json(p));
      return 0;
    }
  }
  std::cerr << "no MNAS pair separating greedy from exact\n";
  return 1;
}
