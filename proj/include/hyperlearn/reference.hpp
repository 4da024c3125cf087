#pragma once

#include <cstddef>

#include "hyperlearn/oracle.hpp"

namespace hyperlearn {

constexpr std::size_t kBruteForceMaxN = 20;

// Asks every subset of V in one round and returns the inclusion-minimal
// positive sets. Refuses n > 20 with BudgetRefused.
LearnOutcome brute_force_learn(EdgeOracle& oracle);

}  // namespace hyperlearn
