#include "binet/align.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace binet {

std::vector<NodeId> candidates(const BINet& source_net,
                               const BINet& target_net, NodeId c) {
  if (c >= source_net.node_count()) throw DomainError("unknown node id");
  return CandidateIndex(target_net).query(source_net.node(c).period);
}

ScoreTable::ScoreTable(const BINet& source_net, const BINet& target_net) {
  const CandidateIndex index(target_net);
  rows_.resize(source_net.node_count());
  for (NodeId c = 0; c < source_net.node_count(); ++c) {
    const auto row = index.query(source_net.node(c).period);
    rows_[c].begin = static_cast<std::uint32_t>(targets_.size());
    for (NodeId e : row) {
      slots_.emplace((static_cast<std::uint64_t>(c) << 32) | e,
                     static_cast<std::uint32_t>(targets_.size()));
      targets_.push_back(e);
    }
    rows_[c].end = static_cast<std::uint32_t>(targets_.size());
  }
  scores_.assign(targets_.size(), 0.0);
  fixed_.assign(targets_.size(), 0);
}

std::span<const NodeId> ScoreTable::row_targets(NodeId c) const {
  const Row& row = rows_.at(c);
  return {targets_.data() + row.begin, targets_.data() + row.end};
}

std::span<const double> ScoreTable::row_scores(NodeId c) const {
  const Row& row = rows_.at(c);
  return {scores_.data() + row.begin, scores_.data() + row.end};
}

std::size_t ScoreTable::slot(NodeId c, NodeId e) const {
  const auto it = slots_.find((static_cast<std::uint64_t>(c) << 32) | e);
  return it == slots_.end() ? npos : it->second;
}

std::optional<double> ScoreTable::score(NodeId c, NodeId e) const {
  const std::size_t i = slot(c, e);
  if (i == npos) return std::nullopt;
  return scores_[i];
}

double ScoreTable::score_or_zero(NodeId c, NodeId e) const {
  const std::size_t i = slot(c, e);
  return i == npos ? 0.0 : scores_[i];
}

bool ScoreTable::is_fixed(NodeId c, NodeId e) const {
  const std::size_t i = slot(c, e);
  return i != npos && fixed_[i];
}

bool ScoreTable::is_seeded_source(NodeId c) const {
  return c < rows_.size() && rows_[c].seeded;
}

void ScoreTable::set_score(NodeId c, NodeId e, double value) {
  const std::size_t i = slot(c, e);
  if (i == npos) {
    throw DomainError("pair is not in the candidate index");
  }
  scores_[i] = value;
}

void ScoreTable::set_fixed(NodeId c, NodeId e, double value) {
  const std::size_t i = slot(c, e);
  if (i == npos) {
    throw DomainError("pair is not in the candidate index");
  }
  scores_[i] = value;
  fixed_[i] = 1;
  rows_[c].seeded = true;
}

double score_neighbor(NodeId c, NodeId e, const BINet& source_net,
                      const BINet& target_net, const ScoreTable& table,
                      NeighborNorm norm) {
  const auto e_neighbors = target_net.neighbors(e);
  if (e_neighbors.empty()) return 0.0;

  double sn = 0.0;
  for (const auto& [c_prime, w] : source_net.neighbors(c)) {
    double best = 0.0;
    for (const auto& [e_prime, unused] : e_neighbors) {
      best = std::max(best, table.score_or_zero(c_prime, e_prime));
    }
    if (best == 0.0) continue;
    sn += source_net.normalized_weight(c, c_prime, norm) * best;
  }
  return sn;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

ScoreTable decipher(const BINet& source_net, const BINet& target_net,
                    const SeedAlignment& seeds, const SeedLexicon& lexicon,
                    const RomanizationTable& roman,
                    const BurstSeqMap& source_seqs,
                    const BurstSeqMap& target_seqs, const ScoreParams& params,
                    NeighborNorm norm, DecipherReport* report,
                    std::uint64_t eval_order_seed) {
  params.validate();

  ScoreTable table(source_net, target_net);

  // Spread the initial mass over each row, then pin seeds to 1.
  for (NodeId c = 0; c < source_net.node_count(); ++c) {
    const auto row = table.row_targets(c);
    if (row.empty()) continue;
    const double init = params.init_mass / static_cast<double>(row.size());
    for (NodeId e : row) table.set_score(c, e, init);
  }
  for (const auto& [c, e] : seeds.pairs) {
    table.set_fixed(c, e, 1.0);  // throws if the pair is not a candidate
  }

  // Sp, St and Sb never change across rounds; cache them per pair. Only Sn
  // is recomputed, from the previous round's table.
  const std::size_t n_pairs = table.pair_count();
  std::vector<double> sp_cache(n_pairs, 0.0), st_cache(n_pairs, 0.0),
      sb_cache(n_pairs, 0.0);
  std::vector<std::pair<NodeId, NodeId>> pair_of(n_pairs);
  {
    std::size_t i = 0;
    for (NodeId c = 0; c < source_net.node_count(); ++c) {
      const std::string& c_word = source_net.node(c).word;
      const auto c_seq = source_seqs.find(c_word);
      for (NodeId e : table.row_targets(c)) {
        pair_of[i] = {c, e};
        if (!table.is_fixed(c, e)) {
          const std::string& e_word = target_net.node(e).word;
          if (params.eta != 0.0) {
            sp_cache[i] = score_pronunciation(c_word, e_word, roman);
          }
          if (params.lambda != 0.0) {
            st_cache[i] = score_translation(c_word, e_word, lexicon,
                                            params.max_combinations);
          }
          if (params.delta != 0.0) {
            const auto e_seq = target_seqs.find(e_word);
            if (c_seq != source_seqs.end() && e_seq != target_seqs.end()) {
              sb_cache[i] = score_coburst(c_seq->second, e_seq->second);
            }
          }
        }
        ++i;
      }
    }
  }

  std::vector<std::size_t> order(n_pairs);
  std::iota(order.begin(), order.end(), 0);
  if (eval_order_seed != 0) {
    std::uint64_t state = eval_order_seed;
    for (std::size_t i = n_pairs; i > 1; --i) {
      const std::size_t j = splitmix64(state) % i;
      std::swap(order[i - 1], order[j]);
    }
  }

  if (report) {
    *report = DecipherReport{};
    report->seed_pairs = seeds.pairs.size();
    report->candidate_pairs = n_pairs;
  }

  std::vector<double> staged(n_pairs, 0.0);
  for (int round = 0; round < params.iterations; ++round) {
    // Compute every update against the previous round's table, then apply
    // all of them at once; the visit order cannot influence the result.
    for (const std::size_t i : order) {
      const auto [c, e] = pair_of[i];
      if (table.is_fixed(c, e)) {
        staged[i] = 1.0;
        continue;
      }
      const double sn =
          params.gamma == 0.0
              ? 0.0
              : score_neighbor(c, e, source_net, target_net, table, norm);
      const double value =
          combined_score(sp_cache[i], st_cache[i], sn, sb_cache[i], params);
      staged[i] = std::min(params.cap, value);
    }

    double max_delta = 0.0;
    {
      std::size_t i = 0;
      for (NodeId c = 0; c < source_net.node_count(); ++c) {
        for (NodeId e : table.row_targets(c)) {
          const double before = table.score_or_zero(c, e);
          max_delta = std::max(max_delta, std::abs(staged[i] - before));
          table.set_score(c, e, staged[i]);
          ++i;
        }
      }
    }

    if (report) {
      report->round_max_delta.push_back(max_delta);
      report->rounds_run = round + 1;
    }
    if (params.early_stop && max_delta < params.early_stop_delta) break;
  }

  return table;
}

namespace {

// Argmax tie-break: earlier target period start, then target word.
bool better_candidate(const BINet& target_net, double score, NodeId e,
                      double best_score, NodeId best_e) {
  if (score != best_score) return score > best_score;
  const BurstElement& a = target_net.node(e);
  const BurstElement& b = target_net.node(best_e);
  if (a.period.start != b.period.start) {
    return a.period.start < b.period.start;
  }
  return a.word < b.word;
}

}  // namespace

AlignmentResult extract_pairs(const ScoreTable& table, const BINet& source_net,
                              const BINet& target_net, std::size_t k) {
  AlignmentResult result;

  for (NodeId c = 0; c < source_net.node_count(); ++c) {
    if (table.is_seeded_source(c)) continue;  // prior knowledge, not a find
    const auto row = table.row_targets(c);
    if (row.empty()) continue;
    const auto scores = table.row_scores(c);

    NodeId best_e = row[0];
    double best_score = scores[0];
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (better_candidate(target_net, scores[i], row[i], best_score,
                           best_e)) {
        best_e = row[i];
        best_score = scores[i];
      }
    }
    result.pairs.push_back(
        AlignedPair{source_net.node(c), target_net.node(best_e), best_score});
  }

  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const AlignedPair& a, const AlignedPair& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.source.word != b.source.word) {
                return a.source.word < b.source.word;
              }
              if (a.source.period != b.source.period) {
                return a.source.period < b.source.period;
              }
              if (a.target.word != b.target.word) {
                return a.target.word < b.target.word;
              }
              return a.target.period < b.target.period;
            });
  if (result.pairs.size() > k) result.pairs.resize(k);

  // Word-level translations over every source word with candidates.
  std::vector<std::string> words;
  for (NodeId c = 0; c < source_net.node_count(); ++c) {
    const std::string& word = source_net.node(c).word;
    if (words.empty() || words.back() != word) words.push_back(word);
  }
  for (const std::string& word : words) {
    if (auto wt = translate_word(word, table, source_net, target_net)) {
      result.word_translations.push_back(std::move(*wt));
    }
  }
  std::sort(result.word_translations.begin(), result.word_translations.end(),
            [](const WordTranslation& a, const WordTranslation& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.source_word != b.source_word) {
                return a.source_word < b.source_word;
              }
              return a.target_word < b.target_word;
            });
  return result;
}

std::optional<WordTranslation> translate_word(const std::string& word,
                                              const ScoreTable& table,
                                              const BINet& source_net,
                                              const BINet& target_net) {
  const auto nodes = source_net.nodes_of_word(word);
  if (nodes.empty()) {
    throw DomainError("word has no node in the source network: " + word);
  }

  bool found = false;
  NodeId best_e = 0;
  double best_score = 0.0;
  for (NodeId c : nodes) {
    const auto row = table.row_targets(c);
    const auto scores = table.row_scores(c);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!found) {
        found = true;
        best_e = row[i];
        best_score = scores[i];
      } else if (better_candidate(target_net, scores[i], row[i], best_score,
                                  best_e)) {
        best_e = row[i];
        best_score = scores[i];
      }
    }
  }
  if (!found) return std::nullopt;
  return WordTranslation{word, target_net.node(best_e).word, best_score};
}

}  // namespace binet
