#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hyperlearn/hypergraph.hpp"
#include "hyperlearn/vertex_set.hpp"

namespace hyperlearn {

struct QueryLedger {
  std::uint64_t total_queries = 0;
  std::vector<std::uint64_t> per_round;  // queries issued in each round
  double wall_seconds = 0.0;

  std::size_t rounds() const { return per_round.size(); }
};

// A timeline that rounds are committed to: either the oracle's own ledger or
// a lane running alongside other lanes.
class RoundSink {
 public:
  virtual ~RoundSink() = default;
  virtual std::size_t rounds_so_far() const = 0;
  virtual void commit_round(std::uint64_t queries) = 0;
};

struct LearnOutcome {
  Hypergraph learned;
  QueryLedger ledger;
  std::size_t budget_violations = 0;
  bool truncated = false;  // stopped by the round cap; `learned` is a best guess
};

class EdgeOracle;

// One round of non-adaptive queries. Answers are returned immediately; the
// round is charged to its sink when the batch is closed or destroyed. An
// empty batch costs nothing.
class Batch {
 public:
  Batch(const EdgeOracle& oracle, RoundSink& sink);
  Batch(const Batch&) = delete;
  Batch& operator=(const Batch&) = delete;
  ~Batch();

  bool ask(const VertexMask& s);
  bool ask(std::span<const Vertex> s);  // any order; duplicates ignored
  bool ask(const VertexSet& s) { return ask(s.span()); }
  // Asks Q(S \ {v}) for each v in `ids`, where `mask` holds exactly `ids`.
  void ask_deletions(const VertexMask& mask, std::span<const Vertex> ids, std::vector<bool>& answers);

  std::uint64_t size() const { return queries_; }
  void close();

 private:
  void charge(std::uint64_t k);

  const EdgeOracle* oracle_;
  RoundSink* sink_;
  std::uint64_t queries_ = 0;
  bool open_ = true;
};

// Answers Q(S) = 1 iff some hidden edge lies inside S, and keeps the ledger.
// Not thread-safe: every concurrent run owns its oracle.
class EdgeOracle : public RoundSink {
 public:
  explicit EdgeOracle(Hypergraph hidden);

  std::size_t n() const { return n_; }

  bool query(const VertexSet& s);  // a round of its own
  std::vector<bool> query_batch(std::span<const VertexSet> batch);
  Batch open_batch() { return Batch(*this, *this); }

  const QueryLedger& ledger() const { return ledger_; }
  void set_wall_seconds(double seconds) { ledger_.wall_seconds = seconds; }
  void set_round_cap(std::optional<std::size_t> cap) { round_cap_ = cap; }
  std::optional<std::size_t> round_cap() const { return round_cap_; }

  std::size_t rounds_so_far() const override { return ledger_.rounds(); }
  void commit_round(std::uint64_t queries) override;
  // Charges a finished parallel section: local round j of the section lands
  // on global round rounds_so_far() + j.
  void commit_section(std::span<const std::uint64_t> per_round);

  // Evaluation without accounting.
  bool evaluate(const VertexMask& s) const;
  bool evaluate(std::span<const Vertex> s) const;
  void evaluate_deletions(const VertexMask& mask, std::span<const Vertex> ids,
                          std::vector<bool>& answers) const;

 private:
  void check_ids(std::span<const Vertex> s) const;

  std::size_t n_;
  std::vector<std::uint32_t> edge_offsets_;
  std::vector<Vertex> edge_vertices_;
  std::vector<std::uint32_t> by_min_offsets_;  // edges grouped by smallest vertex
  std::vector<std::uint32_t> by_min_edges_;
  VertexMask on_some_edge_;
  mutable VertexMask scratch_;
  mutable std::vector<Vertex> common_;
  QueryLedger ledger_;
  std::optional<std::size_t> round_cap_;
};

// Rounds used by one lane of a parallel section, counted from the section's
// starting round.
class Lane : public RoundSink {
 public:
  explicit Lane(std::size_t base) : base_(base) {}
  std::size_t rounds_so_far() const override { return base_ + local_.size(); }
  void commit_round(std::uint64_t queries) override { local_.push_back(queries); }
  const std::vector<std::uint64_t>& local_rounds() const { return local_; }
  std::size_t depth() const { return local_.size(); }

 private:
  std::size_t base_;
  std::vector<std::uint64_t> local_;
};

// Co-schedules independent adaptive procedures: the j-th round of every lane
// is charged to the same global round. Lanes may run one after another; the
// section advances the ledger by its deepest lane when it ends.
class ParallelSection {
 public:
  explicit ParallelSection(EdgeOracle& oracle);
  ParallelSection(const ParallelSection&) = delete;
  ParallelSection& operator=(const ParallelSection&) = delete;
  ~ParallelSection();

  Lane begin_lane() const { return Lane(base_); }
  void end_lane(const Lane& lane);
  void commit();

 private:
  EdgeOracle* oracle_;
  std::size_t base_;
  std::vector<std::uint64_t> merged_;
  bool open_ = true;
};

}  // namespace hyperlearn
