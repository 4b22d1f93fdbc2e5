#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bnfuse/config.hpp"
#include "bnfuse/fusion.hpp"

namespace bnfuse::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kParseOrDomain = 2,
  kScale = 3,
  kInfeasible = 4,
};

struct RunConfig {
  Caps caps;
  std::uint64_t seed = kDefaultSeed;
  Objective objective = Objective::kMinNewArcs;
  std::string format = "json";  // json | text
};

// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bnfuse::cli
