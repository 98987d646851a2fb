#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "binet/burst.hpp"
#include "binet/corpus.hpp"

namespace binet {

using NodeId = std::uint32_t;

// A (word, burst period) pair; one word yields one element per burst period.
struct BurstElement {
  std::string word;
  BurstPeriod period;

  auto operator<=>(const BurstElement&) const = default;
};

// Which side's neighbor set normalizes an edge weight in the Sn clue.
// `source` divides by the weight sum of c (a distribution over N(c));
// `paper` divides by the weight sum of c' (the alternate reading).
enum class NeighborNorm { source, paper };

// Weighted undirected graph over burst elements. Node ids are assigned by
// sorting elements by (word, start, end), so rebuilding from the same inputs
// yields identical ids. Immutable once built.
class BINet {
 public:
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const BurstElement& node(NodeId id) const { return nodes_.at(id); }
  std::optional<NodeId> find(const BurstElement& element) const;
  NodeId id_of(const BurstElement& element) const;  // DomainError if absent

  // Neighbors sorted by descending weight, then word, then period start.
  std::span<const std::pair<NodeId, std::int64_t>> neighbors(NodeId id) const;

  bool has_edge(NodeId a, NodeId b) const;
  std::int64_t weight(NodeId a, NodeId b) const;  // DomainError if missing
  std::int64_t weight_sum(NodeId id) const { return weight_sums_.at(id); }

  // Edge weight divided by one endpoint's total neighbor weight.
  double normalized_weight(NodeId c, NodeId c_prime,
                           NeighborNorm norm = NeighborNorm::source) const;

  // Node ids of a word, ascending period start; empty if the word is absent.
  std::span<const NodeId> nodes_of_word(const std::string& word) const;

  // Largest period end over all nodes; -1 when empty.
  int max_period_end() const { return max_period_end_; }

 private:
  friend class BINetBuilder;

  std::vector<BurstElement> nodes_;
  std::vector<std::vector<std::pair<NodeId, std::int64_t>>> adjacency_;
  std::vector<std::int64_t> weight_sums_;
  std::unordered_map<std::uint64_t, std::int64_t> edge_weights_;  // lo<<32|hi
  std::unordered_map<std::string, std::vector<NodeId>> word_index_;
  std::size_t edge_count_ = 0;
  int max_period_end_ = -1;
};

// Accumulates nodes and edge weights, then finalizes into a BINet.
// Builder ids are provisional; build() remaps them to the canonical sorted
// order.
class BINetBuilder {
 public:
  // Returns the existing id when the element was already added.
  NodeId add_node(BurstElement element);

  // Accumulates weight onto the undirected edge (a, b). Self-loops are
  // rejected.
  void add_edge(NodeId a, NodeId b, std::int64_t weight);

  // Edges below min_edge_weight are dropped.
  BINet build(std::int64_t min_edge_weight = 1) &&;

 private:
  std::vector<BurstElement> nodes_;
  std::map<BurstElement, NodeId> ids_;
  std::unordered_map<std::uint64_t, std::int64_t> weights_;
};

using PeriodMap = std::map<std::string, std::vector<BurstPeriod>>;

// Nodes are every (word, period) in `periods`; each document adds 1 to the
// edge between two distinct elements when both words occur in it and its
// epoch lies inside both periods.
BINet build_binet(const Stream& stream, const PeriodMap& periods,
                  std::int64_t min_edge_weight = 1);

// Epoch-bucketed index answering "which nodes' periods intersect this
// interval", sorted by (period start, word).
class CandidateIndex {
 public:
  explicit CandidateIndex(const BINet& net);

  std::vector<NodeId> query(const BurstPeriod& period) const;

 private:
  const BINet* net_;
  std::vector<std::vector<NodeId>> active_by_epoch_;
};

// Graph dump / load in the CLI formats: node file word<TAB>start<TAB>end<TAB>
// node_id, edge file node_id<TAB>node_id<TAB>weight, both sorted by id.
void dump_binet(const BINet& net, const std::string& nodes_path,
                const std::string& edges_path);
BINet load_binet(const std::string& nodes_path, const std::string& edges_path);

}  // namespace binet
