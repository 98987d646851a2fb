#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "binet/binet.hpp"
#include "binet/lexicon.hpp"
#include "binet/score.hpp"

namespace binet {

// Target nodes whose burst period intersects c's period, sorted by period
// start then word. Convenience wrapper over CandidateIndex.
std::vector<NodeId> candidates(const BINet& source_net, const BINet& target_net,
                               NodeId c);

// Mutable (source node, candidate target node) -> score map with a fixed
// flag for seed-determined pairs. Rows follow the candidate order.
class ScoreTable {
 public:
  ScoreTable() = default;

  // Builds one row per source node from the target net's candidate index;
  // all scores start at 0, nothing fixed.
  ScoreTable(const BINet& source_net, const BINet& target_net);

  std::size_t pair_count() const { return targets_.size(); }
  std::size_t source_count() const { return rows_.size(); }

  std::span<const NodeId> row_targets(NodeId c) const;
  std::span<const double> row_scores(NodeId c) const;

  std::optional<double> score(NodeId c, NodeId e) const;
  double score_or_zero(NodeId c, NodeId e) const;
  bool is_fixed(NodeId c, NodeId e) const;
  bool is_seeded_source(NodeId c) const;

  void set_score(NodeId c, NodeId e, double value);    // DomainError if absent
  void set_fixed(NodeId c, NodeId e, double value);

  // Flat views used by the propagation loop and bit-equality tests.
  std::span<const double> scores() const { return scores_; }
  std::span<const std::uint8_t> fixed_flags() const { return fixed_; }

 private:
  std::size_t slot(NodeId c, NodeId e) const;  // npos when absent
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Row {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    bool seeded = false;
  };

  std::vector<Row> rows_;
  std::vector<NodeId> targets_;
  std::vector<double> scores_;
  std::vector<std::uint8_t> fixed_;
  std::unordered_map<std::uint64_t, std::uint32_t> slots_;
};

// Sn: sum over neighbors c' of c of the normalized edge weight times the
// best current Score(c', e') over neighbors e' of e. Pairs outside the
// candidate index contribute 0.
double score_neighbor(NodeId c, NodeId e, const BINet& source_net,
                      const BINet& target_net, const ScoreTable& table,
                      NeighborNorm norm = NeighborNorm::source);

struct DecipherReport {
  std::size_t seed_pairs = 0;
  std::size_t candidate_pairs = 0;
  int rounds_run = 0;
  std::vector<double> round_max_delta;
};

// Algorithm: seeds fixed at 1, other candidate pairs start at
// init_mass/|Cand(c)|, then synchronous rounds of combined_score rescoring
// with the cap applied. Sp/St/Sb are cached per pair; Sn reads the previous round.
// eval_order_seed permutes the within-round visit order (the result is
// identical by construction; exposed so tests can prove it).
ScoreTable decipher(const BINet& source_net, const BINet& target_net,
                    const SeedAlignment& seeds, const SeedLexicon& lexicon,
                    const RomanizationTable& roman,
                    const BurstSeqMap& source_seqs,
                    const BurstSeqMap& target_seqs, const ScoreParams& params,
                    NeighborNorm norm = NeighborNorm::source,
                    DecipherReport* report = nullptr,
                    std::uint64_t eval_order_seed = 0);

struct AlignedPair {
  BurstElement source;
  BurstElement target;
  double score = 0.0;

  bool operator==(const AlignedPair&) const = default;
};

struct WordTranslation {
  std::string source_word;
  std::string target_word;
  double score = 0.0;

  bool operator==(const WordTranslation&) const = default;
};

struct AlignmentResult {
  std::vector<AlignedPair> pairs;  // descending score
  std::vector<WordTranslation> word_translations;
};

// Per non-seeded source node, its argmax candidate (ties: earlier target
// period start, then word); pairs ranked by descending score, truncated to
// k. Word translations cover every source word with at least one candidate.
AlignmentResult extract_pairs(const ScoreTable& table, const BINet& source_net,
                              const BINet& target_net, std::size_t k);

// w* = word of argmax_e max_{c in nodes(w)} Score(c, e); nullopt when no
// node of w has candidates.
std::optional<WordTranslation> translate_word(const std::string& word,
                                              const ScoreTable& table,
                                              const BINet& source_net,
                                              const BINet& target_net);

}  // namespace binet
