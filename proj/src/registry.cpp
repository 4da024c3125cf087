#include "hyperlearn/registry.hpp"

#include "hyperlearn/errors.hpp"
#include "hyperlearn/matching_learner.hpp"
#include "hyperlearn/reference.hpp"

namespace hyperlearn {

std::vector<std::string> registered_learners() {
  return {"find-matching-adaptive", "find-matching-parallel", "brute-force"};
}

LearnOutcome run_registered_learner(const std::string& name, EdgeOracle& oracle, std::uint64_t seed) {
  if (name == "find-matching-adaptive" || name == "find-matching-parallel") {
    MatchingConfig config;
    config.subroutine = name == "find-matching-parallel" ? Subroutine::kParallel : Subroutine::kAdaptive;
    config.seed = seed;
    return find_matching(oracle, config);
  }
  if (name == "brute-force") return brute_force_learn(oracle);
  throw InputError("unknown learner '" + name + "'");
}

}  // namespace hyperlearn
