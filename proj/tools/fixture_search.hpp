#pragma once

#include <cstdint>
#include <optional>

#include "bnfuse/fusion.hpp"
#include "bnfuse/random.hpp"

namespace bnfuse::fixtures {

// A DAG pair whose fewest-new-arcs ordering keeps fewer independencies than
// the best ordering does.
struct Divergence {
  ExpertSet experts;
  OrderingScore fewest_new_arcs;
  OrderingScore most_retained;
  std::int64_t retained_at_fewest = 0;
  std::size_t attempts = 0;
};

inline std::optional<Divergence> find_divergence(std::uint64_t seed, std::size_t n,
                                                 std::size_t max_attempts, const Caps& caps = {}) {
  Rng rng(seed);
  const std::size_t max_arcs = n * (n - 1) / 2;
  for (std::size_t t = 1; t <= max_attempts; ++t) {
    ExpertSet e{{"d1", "d2"}, {random_dag(rng, n, 0.5, max_arcs), random_dag(rng, n, 0.5, max_arcs)}};
    const ExpertSubset all = all_experts(e);
    OrderingScore fewest = search_ordering_exhaustive(e, all, Objective::kMinNewArcs, caps);
    OrderingScore most = search_ordering_exhaustive(e, all, Objective::kRetainedIndependencies, caps);
    const auto retained = static_cast<std::int64_t>(
        retained_independencies(e, all, fewest.ordering, caps));
    if (retained < most.score) {
      return Divergence{std::move(e), std::move(fewest), std::move(most), retained, t};
    }
  }
  return std::nullopt;
}

}  // namespace bnfuse::fixtures
