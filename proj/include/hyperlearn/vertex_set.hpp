#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hyperlearn {

using Vertex = std::uint32_t;

// A sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids);
  // Sorts and checks for duplicates; throws InputError on a repeated id.
  explicit VertexSet(std::vector<Vertex> ids);

  static VertexSet range(Vertex first, Vertex last);  // {first, ..., last - 1}
  // Trusts the caller that `ids` is already strictly increasing.
  static VertexSet from_sorted(std::vector<Vertex> ids);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  Vertex front() const { return ids_.front(); }
  Vertex back() const { return ids_.back(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<Vertex>& ids() const { return ids_; }
  std::span<const Vertex> span() const { return ids_; }

  bool contains(Vertex v) const;
  bool is_subset_of(const VertexSet& other) const;
  bool is_strict_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;
  VertexSet without(Vertex v) const;
  VertexSet set_union(const VertexSet& other) const;
  VertexSet set_difference(const VertexSet& other) const;
  VertexSet set_intersection(const VertexSet& other) const;

  std::string to_string() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> ids_;
};

// Fixed-universe bitset over {0..n-1}, used on the hot query paths.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  VertexMask(std::size_t n, std::span<const Vertex> ids);

  std::size_t universe() const { return n_; }
  std::size_t word_count() const { return words_.size(); }
  std::uint64_t word(std::size_t i) const { return words_[i]; }
  void set_word(std::size_t i, std::uint64_t bits) { words_[i] = bits; }  // bits beyond n must stay clear

  void set(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool test(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void clear();
  void assign(const VertexMask& other) { words_ = other.words_; }
  std::size_t count() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
        f(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
      }
    }
  }

  VertexSet to_set() const;
  void append_to(std::vector<Vertex>& out) const;

  friend bool operator==(const VertexMask&, const VertexMask&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace hyperlearn
