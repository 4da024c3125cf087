#include "hyperlearn/vertex_set.hpp"

#include <algorithm>
#include <numeric>

#include "hyperlearn/errors.hpp"

namespace hyperlearn {

VertexSet::VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

VertexSet::VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw InputError("vertex set contains a repeated id");
  }
}

VertexSet VertexSet::range(Vertex first, Vertex last) {
  std::vector<Vertex> ids(last > first ? last - first : 0);
  std::iota(ids.begin(), ids.end(), first);
  return from_sorted(std::move(ids));
}

VertexSet VertexSet::from_sorted(std::vector<Vertex> ids) {
  VertexSet s;
  s.ids_ = std::move(ids);
  return s;
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

bool VertexSet::is_strict_subset_of(const VertexSet& other) const {
  return size() < other.size() && is_subset_of(other);
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

VertexSet VertexSet::without(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(ids_.size());
  for (Vertex u : ids_) {
    if (u != v) out.push_back(u);
  }
  return from_sorted(std::move(out));
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
  std::vector<Vertex> out;
  out.reserve(ids_.size() + other.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

VertexSet VertexSet::set_difference(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

VertexSet VertexSet::set_intersection(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out));
  return from_sorted(std::move(out));
}

std::string VertexSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(ids_[i]);
  }
  return out + "}";
}

VertexMask::VertexMask(std::size_t n, std::span<const Vertex> ids) : VertexMask(n) {
  for (Vertex v : ids) set(v);
}

void VertexMask::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::size_t VertexMask::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

VertexSet VertexMask::to_set() const {
  std::vector<Vertex> ids;
  append_to(ids);
  return VertexSet::from_sorted(std::move(ids));
}

void VertexMask::append_to(std::vector<Vertex>& out) const {
  for_each([&](Vertex v) { out.push_back(v); });
}

}  // namespace hyperlearn
