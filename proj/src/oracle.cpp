#include "hyperlearn/oracle.hpp"

#include <algorithm>

#include "hyperlearn/errors.hpp"

namespace hyperlearn {

Batch::Batch(const EdgeOracle& oracle, RoundSink& sink) : oracle_(&oracle), sink_(&sink) {}

Batch::~Batch() { close(); }

void Batch::close() {
  if (!open_) return;
  open_ = false;
  if (queries_ > 0) sink_->commit_round(queries_);
}

void Batch::charge(std::uint64_t k) {
  if (!open_) throw std::logic_error("query on a closed batch");
  if (queries_ == 0 && k > 0) {
    auto cap = oracle_->round_cap();
    if (cap && sink_->rounds_so_far() + 1 > *cap) throw RoundLimitReached(*cap);
  }
  queries_ += k;
}

bool Batch::ask(const VertexMask& s) {
  charge(1);
  return oracle_->evaluate(s);
}

bool Batch::ask(std::span<const Vertex> s) {
  charge(1);
  return oracle_->evaluate(s);
}

void Batch::ask_deletions(const VertexMask& mask, std::span<const Vertex> ids, std::vector<bool>& answers) {
  charge(ids.size());
  oracle_->evaluate_deletions(mask, ids, answers);
}

EdgeOracle::EdgeOracle(Hypergraph hidden)
    : n_(hidden.n()), on_some_edge_(hidden.n()), scratch_(hidden.n()) {
  const auto& edges = hidden.edges();
  edge_offsets_.reserve(edges.size() + 1);
  edge_offsets_.push_back(0);
  std::vector<std::uint32_t> min_count(n_ + 1, 0);
  for (const Edge& e : edges) {
    edge_vertices_.insert(edge_vertices_.end(), e.begin(), e.end());
    edge_offsets_.push_back(static_cast<std::uint32_t>(edge_vertices_.size()));
    ++min_count[e.front() + 1];
    for (Vertex v : e) on_some_edge_.set(v);
  }
  by_min_offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) by_min_offsets_[v + 1] = by_min_offsets_[v] + min_count[v + 1];
  by_min_edges_.resize(edges.size());
  std::vector<std::uint32_t> fill(by_min_offsets_.begin(), by_min_offsets_.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) by_min_edges_[fill[edges[i].front()]++] = static_cast<std::uint32_t>(i);
}

bool EdgeOracle::query(const VertexSet& s) {
  Batch batch = open_batch();
  return batch.ask(s);
}

std::vector<bool> EdgeOracle::query_batch(std::span<const VertexSet> batch_sets) {
  for (const VertexSet& s : batch_sets) check_ids(s.span());
  std::vector<bool> answers;
  answers.reserve(batch_sets.size());
  Batch batch = open_batch();
  for (const VertexSet& s : batch_sets) answers.push_back(batch.ask(s.span()));
  return answers;
}

void EdgeOracle::commit_round(std::uint64_t queries) {
  ledger_.per_round.push_back(queries);
  ledger_.total_queries += queries;
}

void EdgeOracle::commit_section(std::span<const std::uint64_t> per_round) {
  for (std::uint64_t q : per_round) commit_round(q);
}

void EdgeOracle::check_ids(std::span<const Vertex> s) const {
  for (Vertex v : s) {
    if (v >= n_) throw InputError("query vertex " + std::to_string(v) + " outside 0.." + std::to_string(n_) + "-1");
  }
}

bool EdgeOracle::evaluate(const VertexMask& s) const {
  if (s.universe() != n_) throw InputError("query mask has the wrong universe size");
  for (std::size_t w = 0; w < s.word_count(); ++w) {
    for (std::uint64_t bits = s.word(w) & on_some_edge_.word(w); bits != 0; bits &= bits - 1) {
      const Vertex v = static_cast<Vertex>(w * 64 + std::countr_zero(bits));
      for (std::uint32_t k = by_min_offsets_[v]; k < by_min_offsets_[v + 1]; ++k) {
        const std::uint32_t e = by_min_edges_[k];
        bool inside = true;
        for (std::uint32_t j = edge_offsets_[e] + 1; j < edge_offsets_[e + 1]; ++j) {
          if (!s.test(edge_vertices_[j])) {
            inside = false;
            break;
          }
        }
        if (inside) return true;
      }
    }
  }
  return false;
}

bool EdgeOracle::evaluate(std::span<const Vertex> s) const {
  check_ids(s);
  for (Vertex v : s) scratch_.set(v);
  const bool answer = evaluate(scratch_);
  for (Vertex v : s) scratch_.reset(v);
  return answer;
}

void EdgeOracle::evaluate_deletions(const VertexMask& mask, std::span<const Vertex> ids,
                                    std::vector<bool>& answers) const {
  // Q(S \ {v}) = 0 exactly when v lies on every hidden edge inside S.
  bool any_inside = false;
  common_.clear();
  for (std::size_t w = 0; w < mask.word_count(); ++w) {
    for (std::uint64_t bits = mask.word(w) & on_some_edge_.word(w); bits != 0; bits &= bits - 1) {
      const Vertex v = static_cast<Vertex>(w * 64 + std::countr_zero(bits));
      for (std::uint32_t k = by_min_offsets_[v]; k < by_min_offsets_[v + 1]; ++k) {
        const std::uint32_t e = by_min_edges_[k];
        const Vertex* first = edge_vertices_.data() + edge_offsets_[e];
        const Vertex* last = edge_vertices_.data() + edge_offsets_[e + 1];
        if (!std::all_of(first + 1, last, [&](Vertex u) { return mask.test(u); })) continue;
        if (!any_inside) {
          common_.assign(first, last);
          any_inside = true;
        } else {
          auto keep = std::remove_if(common_.begin(), common_.end(),
                                     [&](Vertex u) { return !std::binary_search(first, last, u); });
          common_.erase(keep, common_.end());
        }
      }
    }
  }
  for (Vertex v : ids) {
    answers.push_back(any_inside && !std::binary_search(common_.begin(), common_.end(), v));
  }
}

ParallelSection::ParallelSection(EdgeOracle& oracle) : oracle_(&oracle), base_(oracle.rounds_so_far()) {}

ParallelSection::~ParallelSection() { commit(); }

void ParallelSection::end_lane(const Lane& lane) {
  const auto& local = lane.local_rounds();
  if (merged_.size() < local.size()) merged_.resize(local.size(), 0);
  for (std::size_t j = 0; j < local.size(); ++j) merged_[j] += local[j];
}

void ParallelSection::commit() {
  if (!open_) return;
  open_ = false;
  oracle_->commit_section(merged_);
}

}  // namespace hyperlearn
