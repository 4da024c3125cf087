#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hyperlearn/vertex_set.hpp"

namespace hyperlearn {

// SplitMix64. Cheap to seed, so every sample can own an independent stream
// keyed by (seed, phase, index) and be regenerated later instead of stored.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// Draws subsets of a fixed pool where each member is kept independently with
// probability p. Sparse draws skip ahead geometrically over kept members,
// dense ones over dropped members, and moderate ones test every member.
class SubsetSampler {
 public:
  SubsetSampler(std::size_t n, std::span<const Vertex> pool, double p);

  void draw(SplitMix64& rng, VertexMask& out) const;
  double probability() const { return p_; }

 private:
  // kPerMember scatters lanes onto pool members; kMaskedWords ANDs lanes with
  // the pool mask, cheaper once the pool covers a good part of the universe.
  enum class Mode { kNone, kAll, kSkipKept, kSkipDropped, kPerMember, kMaskedWords };

  std::uint64_t skip(SplitMix64& rng) const;
  std::uint64_t bernoulli_lanes(SplitMix64& rng) const;  // 64 independent Bernoulli(p) bits

  std::vector<Vertex> pool_;
  VertexMask pool_mask_;
  double p_;
  Mode mode_;
  double inv_log_stay_ = 0.0;  // 1 / ln(1 - q) for the skipped side's probability q
  std::uint64_t fraction_ = 0;  // p as a 64-bit binary fraction
};

// Uniformly random k-subsets of {0..n-1} by partial Fisher-Yates on a
// persistent permutation, so each draw costs O(k).
class KSubsetDrawer {
 public:
  explicit KSubsetDrawer(std::size_t n);
  // The returned view is unsorted and valid until the next draw.
  std::span<const Vertex> draw(std::size_t k, SplitMix64& rng);

 private:
  std::vector<Vertex> perm_;
};

// Uniformly random k-subset of {0..n-1}, sorted.
std::vector<Vertex> random_subset(std::size_t n, std::size_t k, SplitMix64& rng);

}  // namespace hyperlearn
