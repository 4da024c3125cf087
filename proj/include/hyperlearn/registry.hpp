#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperlearn/oracle.hpp"

namespace hyperlearn {

// Learners that take nothing but an oracle and a seed.
std::vector<std::string> registered_learners();
// Throws InputError for an unknown name.
LearnOutcome run_registered_learner(const std::string& name, EdgeOracle& oracle, std::uint64_t seed);

}  // namespace hyperlearn
