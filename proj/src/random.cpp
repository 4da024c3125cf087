#include "hyperlearn/random.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperlearn/errors.hpp"

namespace hyperlearn {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(seed) ^ (a + 0x632be59bd9b4e019ULL)) ^ (b + 0x8cb92ba72f3d8dd7ULL));
}

SubsetSampler::SubsetSampler(std::size_t n, std::span<const Vertex> pool, double p)
    : pool_(pool.begin(), pool.end()), pool_mask_(n, pool), p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("sampling probability must lie in [0, 1]");
  constexpr double kDense = 1.0 / 128.0;
  if (p == 0.0) {
    mode_ = Mode::kNone;
  } else if (p == 1.0) {
    mode_ = Mode::kAll;
  } else if (p < kDense) {
    mode_ = Mode::kSkipKept;
    inv_log_stay_ = 1.0 / std::log1p(-p);
  } else if (p > 1.0 - kDense) {
    mode_ = Mode::kSkipDropped;
    inv_log_stay_ = 1.0 / std::log1p(-(1.0 - p));
  } else {
    mode_ = 4 * pool_.size() >= n ? Mode::kMaskedWords : Mode::kPerMember;
    fraction_ = static_cast<std::uint64_t>(std::ldexp(p, 64));
  }
}

std::uint64_t SubsetSampler::skip(SplitMix64& rng) const {
  // Inverse CDF of the number of failures before the first success.
  const double u = static_cast<double>((rng() >> 11) + 1) * 0x1p-53;
  const double k = std::floor(std::log(u) * inv_log_stay_);
  return k >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(k);
}

std::uint64_t SubsetSampler::bernoulli_lanes(SplitMix64& rng) const {
  // Lane j is kept iff its uniform U_j < p. Compare U_j with p bit by bit
  // from the top; a lane is settled at the first bit where they differ.
  std::uint64_t undecided = ~std::uint64_t{0};
  std::uint64_t kept = 0;
  for (int bit = 63; bit >= 0 && undecided != 0; --bit) {
    const std::uint64_t r = rng();
    if ((fraction_ >> bit) & 1U) {
      kept |= undecided & ~r;
      undecided &= r;
    } else {
      undecided &= ~r;
    }
  }
  return kept;
}

namespace {

std::uint64_t advance(std::uint64_t i, std::uint64_t gap) {
  return gap >= std::numeric_limits<std::uint64_t>::max() - i - 1 ? std::numeric_limits<std::uint64_t>::max()
                                                                  : i + 1 + gap;
}

}  // namespace

void SubsetSampler::draw(SplitMix64& rng, VertexMask& out) const {
  const std::uint64_t size = pool_.size();
  switch (mode_) {
    case Mode::kNone:
      out.clear();
      return;
    case Mode::kAll:
      out.assign(pool_mask_);
      return;
    case Mode::kPerMember:
      out.clear();
      for (std::size_t base = 0; base < pool_.size(); base += 64) {
        std::uint64_t kept = bernoulli_lanes(rng);
        if (pool_.size() - base < 64) kept &= (std::uint64_t{1} << (pool_.size() - base)) - 1;
        for (; kept != 0; kept &= kept - 1) out.set(pool_[base + static_cast<std::size_t>(std::countr_zero(kept))]);
      }
      return;
    case Mode::kMaskedWords:
      for (std::size_t w = 0; w < out.word_count(); ++w) {
        const std::uint64_t members = pool_mask_.word(w);
        out.set_word(w, members == 0 ? 0 : members & bernoulli_lanes(rng));
      }
      return;
    case Mode::kSkipKept:
      out.clear();
      for (std::uint64_t i = skip(rng); i < size; i = advance(i, skip(rng))) out.set(pool_[i]);
      return;
    case Mode::kSkipDropped:
      out.assign(pool_mask_);
      for (std::uint64_t i = skip(rng); i < size; i = advance(i, skip(rng))) out.reset(pool_[i]);
      return;
  }
}

KSubsetDrawer::KSubsetDrawer(std::size_t n) : perm_(n) {
  for (std::size_t i = 0; i < n; ++i) perm_[i] = static_cast<Vertex>(i);
}

std::span<const Vertex> KSubsetDrawer::draw(std::size_t k, SplitMix64& rng) {
  const std::size_t n = perm_.size();
  if (k > n) throw InputError("subset size exceeds the universe");
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(perm_[i], perm_[pick(rng)]);
  }
  return std::span<const Vertex>(perm_.data(), k);
}

std::vector<Vertex> random_subset(std::size_t n, std::size_t k, SplitMix64& rng) {
  KSubsetDrawer drawer(n);
  auto view = drawer.draw(k, rng);
  std::vector<Vertex> out(view.begin(), view.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hyperlearn
