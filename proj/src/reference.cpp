#include "hyperlearn/reference.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>

#include "hyperlearn/errors.hpp"

namespace hyperlearn {

LearnOutcome brute_force_learn(EdgeOracle& oracle) {
  const std::size_t n = oracle.n();
  if (n > kBruteForceMaxN) {
    throw BudgetRefused("exhaustive learning needs 2^" + std::to_string(n) + " queries", std::ldexp(1.0, static_cast<int>(n)),
                        std::ldexp(1.0, static_cast<int>(kBruteForceMaxN)));
  }
  const auto start = std::chrono::steady_clock::now();
  const std::uint32_t subsets = std::uint32_t{1} << n;
  std::vector<std::uint8_t> positive(subsets, 0);
  LearnOutcome outcome;
  try {
    // Gray-code order: consecutive queries differ in one vertex.
    VertexMask mask(n);
    Batch batch = oracle.open_batch();
    positive[0] = batch.ask(mask) ? 1 : 0;
    for (std::uint32_t i = 1; i < subsets; ++i) {
      const auto flipped = static_cast<Vertex>(std::countr_zero(i));
      const std::uint32_t code = i ^ (i >> 1);
      if ((code >> flipped) & 1U) {
        mask.set(flipped);
      } else {
        mask.reset(flipped);
      }
      positive[code] = batch.ask(mask) ? 1 : 0;
    }
  } catch (const RoundLimitReached&) {
    outcome.truncated = true;
  }

  std::vector<Edge> minimal;
  if (!outcome.truncated) {
    for (std::uint32_t code = 1; code < subsets; ++code) {
      if (!positive[code]) continue;
      bool is_minimal = true;
      for (std::uint32_t bits = code; bits != 0 && is_minimal; bits &= bits - 1) {
        if (positive[code & ~(bits & (~bits + 1))]) is_minimal = false;
      }
      if (!is_minimal) continue;
      std::vector<Vertex> ids;
      for (std::uint32_t bits = code; bits != 0; bits &= bits - 1) ids.push_back(static_cast<Vertex>(std::countr_zero(bits)));
      minimal.push_back(Edge::from_sorted(std::move(ids)));
    }
  }
  outcome.learned = Hypergraph(n, std::move(minimal));
  oracle.set_wall_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  outcome.ledger = oracle.ledger();
  return outcome;
}

}  // namespace hyperlearn
